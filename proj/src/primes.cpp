#include "renyi/primes.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace renyi {

namespace {

std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
    std::vector<std::uint8_t> mark(limit + 1, 1);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (!mark[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) mark[j] = 0;
    }
    return primes;
}

}  // namespace

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit) {
    if (limit > kBudget) throw ResourceError("prime sieve budget exceeded");
    if (limit < 2) return;
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 2;
    while (root * root > limit + 1) --root;
    auto base = simple_sieve(std::max<std::uint64_t>(root + 1, 3));

    primes_.reserve(static_cast<std::size_t>(
        limit > 100 ? 1.2 * static_cast<double>(limit) / std::log(static_cast<double>(limit)) : 30));

    constexpr std::uint64_t kSeg = 1u << 21;
    std::vector<std::uint8_t> seg(kSeg);
    for (std::uint64_t low = 2; low <= limit; low += kSeg) {
        std::uint64_t high = std::min(low + kSeg - 1, limit);
        std::fill(seg.begin(), seg.end(), 1);
        for (std::uint64_t p : base) {
            if (p * p > high) break;
            std::uint64_t start = std::max(p * p, ((low + p - 1) / p) * p);
            for (std::uint64_t j = start; j <= high; j += p) seg[j - low] = 0;
        }
        for (std::uint64_t i = low; i <= high; ++i)
            if (seg[i - low]) primes_.push_back(i);
    }
}

std::uint64_t PrimeTable::nth(std::size_t n) const {
    if (n == 0) throw DomainError("nth_prime is 1-indexed");
    if (n > primes_.size()) throw ResourceError("nth_prime beyond sieved range");
    return primes_[n - 1];
}

std::size_t PrimeTable::count_below(std::uint64_t x) const {
    auto it = std::lower_bound(primes_.begin(), primes_.end(), x);
    return static_cast<std::size_t>(it - primes_.begin());
}

const PrimeTable& PrimeTable::shared(std::uint64_t at_least) {
    static std::unique_ptr<PrimeTable> table;
    if (!table || table->limit() < at_least) {
        std::uint64_t lim = std::max<std::uint64_t>(at_least, 1u << 20);
        if (table && table->limit() * 2 > lim) lim = table->limit() * 2;
        if (lim > PrimeTable::kBudget) {
            if (at_least > PrimeTable::kBudget)
                throw ResourceError("requested primes beyond sieve budget");
            lim = PrimeTable::kBudget;
        }
        table = std::make_unique<PrimeTable>(lim);
    }
    return *table;
}

std::uint64_t nth_prime(std::size_t n) {
    // p_n < n (log n + log log n) for n >= 6
    double est = 100;
    if (n >= 6) {
        double dn = static_cast<double>(n);
        est = dn * (std::log(dn) + std::log(std::log(dn))) + 10;
    }
    const PrimeTable* t = &PrimeTable::shared(static_cast<std::uint64_t>(est));
    while (t->primes().size() < n) t = &PrimeTable::shared(t->limit() * 2);
    return t->nth(n);
}

Enclosure theta(std::uint64_t x) {
    if (x < 2) return Enclosure(0.0);
    const auto& t = PrimeTable::shared(x);
    Real lo(0.0), hi(0.0), tmp;
    for (std::uint64_t p : t.primes()) {
        if (p > x) break;
        mpfr_set_ui(tmp.get(), static_cast<unsigned long>(p), MPFR_RNDN);
        Real l;
        mpfr_log(l.get(), tmp.get(), MPFR_RNDD);
        mpfr_add(lo.get(), lo.get(), l.get(), MPFR_RNDD);
        mpfr_log(l.get(), tmp.get(), MPFR_RNDU);
        mpfr_add(hi.get(), hi.get(), l.get(), MPFR_RNDU);
    }
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure theta(const Enclosure& x) {
    if (x.hi().sign() < 0 || cmp(x.hi(), Real(2.0)) < 0) return Enclosure(0.0);
    Real flo, fhi;
    mpfr_floor(flo.get(), x.lo().get());
    mpfr_floor(fhi.get(), x.hi().get());
    if (!mpfr_fits_ulong_p(fhi.get(), MPFR_RNDD))
        throw ResourceError("theta argument beyond sieve budget");
    std::uint64_t a = flo.sign() < 0 ? 0 : mpfr_get_ui(flo.get(), MPFR_RNDD);
    std::uint64_t b = mpfr_get_ui(fhi.get(), MPFR_RNDD);
    return hull(theta(a), theta(b));
}

Enclosure prime_sum_reciprocal(std::uint64_t x) {
    if (x < 3) throw DomainError("prime_sum_reciprocal requires x >= 3");
    const auto& t = PrimeTable::shared(x);
    Real lo(0.0), hi(0.0), p_r, term;
    for (std::uint64_t p : t.primes()) {
        if (p >= x) break;
        mpfr_set_ui(p_r.get(), static_cast<unsigned long>(p), MPFR_RNDN);
        mpfr_ui_div(term.get(), 1, p_r.get(), MPFR_RNDD);
        mpfr_add(lo.get(), lo.get(), term.get(), MPFR_RNDD);
        mpfr_ui_div(term.get(), 1, p_r.get(), MPFR_RNDU);
        mpfr_add(hi.get(), hi.get(), term.get(), MPFR_RNDU);
    }
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure sum_inv_p_sq_below(std::uint64_t u) {
    Real lo(0.0), hi(0.0), term, psq;
    if (u <= 2) return Enclosure(0.0);
    const auto& t = PrimeTable::shared(u);
    for (std::uint64_t p : t.primes()) {
        if (p >= u) break;
        mpfr_set_ui(psq.get(), static_cast<unsigned long>(p), MPFR_RNDN);
        mpfr_sqr(psq.get(), psq.get(), MPFR_RNDN);  // exact for p < 2^53
        mpfr_ui_div(term.get(), 1, psq.get(), MPFR_RNDD);
        mpfr_add(lo.get(), lo.get(), term.get(), MPFR_RNDD);
        mpfr_ui_div(term.get(), 1, psq.get(), MPFR_RNDU);
        mpfr_add(hi.get(), hi.get(), term.get(), MPFR_RNDU);
    }
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure tail_sum_inv_p_sq(std::uint64_t u, const Enclosure& full_sum) {
    if (u < 2) throw DomainError("tail_sum_inv_p_sq requires u >= 2");
    // integral comparison: sum_{p>=u} 1/p^2 <= sum_{n>=u} 1/n^2 <= 1/(u-1)
    Enclosure bound = Enclosure(Real(0.0),
                                (Enclosure(1.0) / Enclosure::from_ulong(u - 1)).hi());
    if (u == 2) return intersect(full_sum, bound);
    if (u > PrimeTable::kBudget) return bound;
    Enclosure diff = full_sum - sum_inv_p_sq_below(u);
    return intersect(emax(diff, Enclosure(0.0)), bound);
}

Enclosure twin_prime_partial(std::uint64_t u) {
    if (u <= 3) throw DomainError("twin_prime_partial requires u > 3");
    const auto& t = PrimeTable::shared(u);
    Enclosure prod(1.0);
    for (std::uint64_t p : t.primes()) {
        if (p >= u) break;
        if (p == 2) continue;
        unsigned long pm1 = static_cast<unsigned long>(p - 1);
        Enclosure num = pow_int(Enclosure::from_ulong(pm1), 2);
        Enclosure den = Enclosure::from_ulong(static_cast<unsigned long>(p)) *
                        Enclosure::from_ulong(static_cast<unsigned long>(p - 2));
        prod = prod * (num / den);
    }
    return prod;
}

std::map<std::uint64_t, Enclosure> mertens_product_snapshots(std::vector<std::uint64_t> cuts) {
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::map<std::uint64_t, Enclosure> out;
    if (cuts.empty()) return out;
    const auto& t = PrimeTable::shared(cuts.back());
    Enclosure prod(1.0);
    std::size_t ci = 0;
    for (std::uint64_t p : t.primes()) {
        while (ci < cuts.size() && p >= cuts[ci]) out.emplace(cuts[ci++], prod);
        if (ci == cuts.size()) break;
        if (p == 2) continue;
        prod = prod * (Enclosure::from_ulong(static_cast<unsigned long>(p - 1)) /
                       Enclosure::from_ulong(static_cast<unsigned long>(p - 2)));
    }
    while (ci < cuts.size()) out.emplace(cuts[ci++], prod);
    return out;
}

Enclosure shifted_mertens_product(std::uint64_t u, std::uint64_t z) {
    if (u >= z) return Enclosure(1.0);
    auto snaps = mertens_product_snapshots({u, z});
    return snaps.at(z) / snaps.at(u);
}

mpz_class primorial(unsigned n) {
    if (n == 0) return 1;
    std::uint64_t pn = nth_prime(n);
    const auto& t = PrimeTable::shared(pn);
    mpz_class k = 1;
    for (unsigned i = 0; i < n; ++i) k *= static_cast<unsigned long>(t.primes()[i]);
    return k;
}

namespace {
Enclosure artin_factor(const Enclosure& q) {
    Enclosure den = q * q - q - Enclosure(1.0);
    return Enclosure(1.0) - (q - Enclosure(1.0)) / den;
}
}  // namespace

Enclosure artin_style_product(const mpz_class& k) {
    if (k <= 0 || mpz_odd_p(k.get_mpz_t()))
        throw DomainError("artin_style_product requires even k");
    mpz_class rem = k / 2;
    if (rem > 1 && mpz_even_p(rem.get_mpz_t()))
        throw DomainError("artin_style_product requires k/2 odd (square-free)");
    Enclosure prod(1.0);
    const auto& t = PrimeTable::shared(1u << 20);
    for (std::uint64_t p : t.primes()) {
        if (rem == 1) break;
        mpz_class psq;
        mpz_ui_pow_ui(psq.get_mpz_t(), static_cast<unsigned long>(p), 2);
        if (psq > rem) break;  // remainder, if > 1, is prime
        if (p == 2) continue;
        if (mpz_divisible_ui_p(rem.get_mpz_t(), static_cast<unsigned long>(p))) {
            rem /= static_cast<unsigned long>(p);
            if (mpz_divisible_ui_p(rem.get_mpz_t(), static_cast<unsigned long>(p)))
                throw DomainError("artin_style_product: k/2 not square-free");
            prod = prod * artin_factor(Enclosure::from_ulong(static_cast<unsigned long>(p)));
        }
    }
    if (rem > 1) {
        // no factor <= sqrt(rem) within the table; prime only if the table reached there
        mpz_class lim_sq;
        mpz_ui_pow_ui(lim_sq.get_mpz_t(), static_cast<unsigned long>(t.limit()), 2);
        if (lim_sq < rem)
            throw ResourceError("artin_style_product: could not certify factorization of k/2");
        prod = prod * artin_factor(Enclosure::from_mpz(rem.get_mpz_t()));
    }
    return prod;
}

Enclosure epsilon0_from_threshold(const Enclosure& threshold) {
    if (cmp(threshold.lo(), Real(3.0)) < 0)
        throw DomainError("epsilon0: threshold below 3, no prime qualifies");
    const auto& t = PrimeTable::shared(1u << 16);
    mpz_class prod = 1;
    std::uint64_t pbar = 0;
    for (std::uint64_t p : t.primes()) {
        if (p == 2) continue;
        mpz_class next = prod * static_cast<unsigned long>(p);
        // exact comparison of the integer product against the lower endpoint
        if (mpfr_cmp_z(threshold.lo().get(), next.get_mpz_t()) >= 0) {
            prod = next;
            pbar = p;
        } else {
            break;
        }
    }
    if (pbar == 0) throw DomainError("epsilon0: no prime qualifies");
    return Enclosure(1.0) / Enclosure::from_ulong(pbar - 2);
}

Enclosure epsilon0(const Enclosure& X2, const Enclosure& delta) {
    Enclosure logX2 = log(X2);
    Enclosure x2 = X2 / pow_int(logX2, 5);
    Enclosure threshold = pow(log(x2), delta);
    return epsilon0_from_threshold(threshold);
}

}  // namespace renyi
