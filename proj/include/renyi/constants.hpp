#pragma once

#include "renyi/enclosure.hpp"

namespace renyi {

// Constants every bound formula consumes. twin_prime, artin and
// sum_inv_p_sq are recomputed from primes up to 10^7 with integral tail
// bounds and intersected with the quoted digit strings; mertens_M is a
// literature literal cross-checked against the two-sided prime-reciprocal
// bounds at construction.
struct FundamentalConstants {
    Enclosure e_gamma;       // e^gamma
    Enclosure mertens_M;     // Mertens constant
    Enclosure twin_prime;    // prod_{p>2} (1 - 1/(p-1)^2)
    Enclosure artin;         // prod_p (1 - 1/(p(p-1)))
    Enclosure sum_inv_p_sq;  // sum_p 1/p^2

    static const FundamentalConstants& get();
};

// sum_{p<x} 1/p >= loglog x + M - 2.964e-6 / log x   (x >= 2)
Enclosure mertens_sum_lower_bound(const Enclosure& x);
// sum_{p<x} 1/p <= loglog x + M + c/log x with c = 1.445e-2 for
// x > exp(8.9), improved to 2.588e-6 for x > 10^12; tightest applicable.
Enclosure mertens_sum_upper_bound(const Enclosure& x);

// checks the two-sided bounds against a direct sum at x (testing hook,
// also run at startup for small x as a transcription guard)
bool mertens_bounds_hold_at(std::uint64_t x);

}  // namespace renyi
