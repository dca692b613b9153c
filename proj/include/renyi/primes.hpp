#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

#include "renyi/enclosure.hpp"

namespace renyi {

// Primes up to a limit, segmented sieve of Eratosthenes. Immutable after
// construction; queries are thread-safe.
class PrimeTable {
  public:
    static constexpr std::uint64_t kBudget = 1'000'000'000;

    explicit PrimeTable(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }

    // 1-indexed: nth(1) == 2. ResourceError past the sieved range.
    std::uint64_t nth(std::size_t n) const;
    std::size_t count_below(std::uint64_t x) const;  // pi(x-1), primes < x

    // Grow-only process-wide table. Not thread-safe during growth.
    static const PrimeTable& shared(std::uint64_t at_least);

  private:
    std::uint64_t limit_;
    std::vector<std::uint64_t> primes_;
};

// theta(x) = sum of log p over p <= x, every term outward-rounded.
Enclosure theta(std::uint64_t x);
Enclosure theta(const Enclosure& x);

std::uint64_t nth_prime(std::size_t n);

// sum of 1/p over p < x (strict).
Enclosure prime_sum_reciprocal(std::uint64_t x);

// sum of 1/p^2 over p < u (strict).
Enclosure sum_inv_p_sq_below(std::uint64_t u);

// sum of 1/p^2 over p >= u, given an enclosure of the full sum. Always
// intersected with the integral tail bound [0, 1/(u-1)].
Enclosure tail_sum_inv_p_sq(std::uint64_t u, const Enclosure& full_sum);

// product over 2 < p < u of (p-1)^2 / (p(p-2)).
Enclosure twin_prime_partial(std::uint64_t u);

// product over u <= p < z of (1 - 1/(p-1))^{-1} = (p-1)/(p-2).
Enclosure shifted_mertens_product(std::uint64_t u, std::uint64_t z);

// snapshots of the running product (p-1)/(p-2) over 2 < p < cut, for
// several cuts in one sweep; ratios give range products.
std::map<std::uint64_t, Enclosure> mertens_product_snapshots(std::vector<std::uint64_t> cuts);

// product of the first n primes, exact.
mpz_class primorial(unsigned n);

// product over primes q | k/2 of (1 - (q-1)/(q^2-q-1)); requires k even
// with k/2 odd and square-free.
Enclosure artin_style_product(const mpz_class& k);

// epsilon_0(X2, delta) = 1/(pbar - 2), pbar the largest prime with
// product of odd primes 3..pbar <= log^delta x2(X2), compared exactly
// against the lower endpoint.
Enclosure epsilon0(const Enclosure& X2, const Enclosure& delta);
// same, from an already-computed threshold
Enclosure epsilon0_from_threshold(const Enclosure& threshold);

}  // namespace renyi
