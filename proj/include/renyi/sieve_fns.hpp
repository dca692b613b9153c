#pragma once

#include <cstddef>
#include <vector>

#include "renyi/enclosure.hpp"

namespace renyi {

// Grid of enclosures for the linear-sieve pair (f, F) built by marching
// the integral form of (sF(s))' = f(s-1), (sf(s))' = F(s-1) from the
// initial segment F = 2e^gamma/s, f = 0 on (0,2]. Grid points are exact
// dyadic rationals so that s-1 lands on the grid.
class SieveFnTable {
  public:
    SieveFnTable(double s_max, double step);

    double s_max() const { return s_max_; }
    double step() const { return step_; }
    std::size_t size() const { return f_.size(); }
    Real s_at(std::size_t k) const;
    const Enclosure& f_at_index(std::size_t k) const { return f_[k]; }
    const Enclosure& F_at_index(std::size_t k) const { return F_[k]; }

    // containment of {f(t) : t in s}, s within [2, s_max]
    Enclosure f_at(const Enclosure& s) const;
    // containment of {F(t) : t in s}, s within (0, s_max]
    Enclosure F_at(const Enclosure& s) const;

    bool covers(const Enclosure& s) const;

    static const SieveFnTable& shared();  // s_max 10, step 1/256

  private:
    double s_max_, step_;
    int shift_;  // grid indices per unit length
    std::vector<Enclosure> f_, F_;

    Real s_at_long(long k) const;
    long index_floor(const Real& x) const;  // some k with s_k <= x
    long index_ceil(const Real& x) const;   // some k with s_k >= x (clamped)
    Enclosure f_range(const Enclosure& t) const;
    Enclosure F_range(const Enclosure& t) const;
    friend class SieveMarcher;
};

// Printed closed forms, evaluated by verified quadrature; valid on
// (0, 6] for f and (0, 7] for F. Used as oracles and for the tight
// values at the s = 6 clamp.
Enclosure closed_form_f(const Enclosure& s, double tol = 1e-9);
Enclosure closed_form_F(const Enclosure& s, double tol = 1e-9);

// f(6) and F(6) via closed forms, cached.
const Enclosure& f_at_6();
const Enclosure& F_at_6();

// Public evaluators: closed forms on their analytic ranges, march table
// in between, monotone clamps [f(6), 1] and [1, F(6)] beyond 6.
Enclosure eval_f(const Enclosure& s);
Enclosure eval_F(const Enclosure& s);

// majorant h: e^{-2} on [1,2], e^{-s} on [2,3], 3 e^{-s}/s beyond; hulls
// across breakpoints
Enclosure h_majorant(const Enclosure& s);

// scale * (1/2 - alpha - 2 alpha1 loglog N / log N); scale defaults to M
Enclosure c_alpha(const Enclosure& N, int M, const Enclosure& alpha, const Enclosure& alpha1,
                  const Enclosure* scale_override = nullptr);

// max(1 - f(c), F(c) - 1) at c = c_alpha(X2)
Enclosure m_bar(const Enclosure& alpha, const Enclosure& X2, int M, const Enclosure& alpha1,
                const Enclosure* scale_override = nullptr);

}  // namespace renyi
