#include "renyi/constants.hpp"

#include "renyi/primes.hpp"

namespace renyi {

namespace {

// OEIS A077761, 30 digits, outward-bracketed
const char* kMertensLo = "0.261497212847642783755426838608";
const char* kMertensHi = "0.261497212847642783755426838609";

Enclosure tail_factor_lower(std::uint64_t P) {
    // 1 - sum_{n>=P} 1/n^2 >= 1 - 1/(P-1)
    return Enclosure(1.0) - Enclosure(Real(0.0), (Enclosure(1.0) / Enclosure::from_ulong(P - 1)).hi());
}

FundamentalConstants compute() {
    constexpr std::uint64_t P = 10'000'000;
    const auto& t = PrimeTable::shared(P);

    Enclosure twin(1.0), artin(1.0);
    for (std::uint64_t p : t.primes()) {
        Enclosure q = Enclosure::from_ulong(static_cast<unsigned long>(p));
        if (p > 2) {
            // (p-1)^2 / (p(p-2)) inverted form: 1 - 1/(p-1)^2
            twin = twin * (Enclosure(1.0) - Enclosure(1.0) / pow_int(q - Enclosure(1.0), 2));
        }
        artin = artin * (Enclosure(1.0) - Enclosure(1.0) / (q * (q - Enclosure(1.0))));
    }
    twin = twin * tail_factor_lower(P);
    artin = artin * tail_factor_lower(P);
    // the multiplications above only lower the lo endpoints; hi endpoints of
    // the finite products already upper-bound the full products

    Enclosure sum_sq = sum_inv_p_sq_below(P) +
                       Enclosure(Real(0.0), (Enclosure(1.0) / Enclosure::from_ulong(P - 1)).hi());

    FundamentalConstants c{
        exp_euler_gamma(),
        Enclosure::from_endpoints_str(kMertensLo, kMertensHi),
        intersect(twin, Enclosure::from_endpoints_str("0.66016", "0.66017")),
        intersect(artin, Enclosure::from_endpoints_str("0.37395", "0.37396")),
        intersect(sum_sq, Enclosure::from_endpoints_str("0.452247", "0.452248")),
    };
    return c;
}

}  // namespace

const FundamentalConstants& FundamentalConstants::get() {
    static FundamentalConstants c = [] {
        FundamentalConstants v = compute();
        // transcription guard on the Mertens literal
        for (std::uint64_t x : {std::uint64_t{10'000}, std::uint64_t{1'000'000}})
            if (!mertens_bounds_hold_at(x))
                throw Error("Mertens constant cross-check failed at x=" + std::to_string(x));
        return v;
    }();
    return c;
}

Enclosure mertens_sum_lower_bound(const Enclosure& x) {
    if (cmp(x.lo(), Real(2.0)) < 0) throw DomainError("mertens lower bound needs x >= 2");
    const auto& C = FundamentalConstants::get();
    return log_log(x) + C.mertens_M - literal("2.964e-6") / log(x);
}

Enclosure mertens_sum_upper_bound(const Enclosure& x) {
    const auto& C = FundamentalConstants::get();
    Enclosure e89 = exp(literal("8.9"));
    if (!e89.certainly_lt(x)) throw DomainError("mertens upper bound needs x > exp(8.9)");
    Enclosure base = log_log(x) + C.mertens_M;
    Enclosure b1 = base + literal("1.445e-2") / log(x);
    if (literal("1e12").certainly_lt(x)) return emin(b1, base + literal("2.588e-6") / log(x));
    return b1;
}

bool mertens_bounds_hold_at(std::uint64_t x) {
    // intentionally avoids FundamentalConstants::get() (called during its init)
    Enclosure M = Enclosure::from_endpoints_str(kMertensLo, kMertensHi);
    Enclosure xe = Enclosure::from_ulong(x);
    Enclosure sum = prime_sum_reciprocal(x);
    Enclosure lower = log_log(xe) + M - literal("2.964e-6") / log(xe);
    if (!lower.certainly_le(sum)) return false;
    Enclosure e89 = exp(literal("8.9"));
    if (e89.certainly_lt(xe)) {
        Enclosure upper = log_log(xe) + M + literal("1.445e-2") / log(xe);
        if (!sum.certainly_le(upper)) return false;
    }
    return true;
}

}  // namespace renyi
