#pragma once

#include <mpfr.h>
#include <gmp.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace renyi {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Operand outside the mathematical domain of the operation.
struct DomainError : Error {
    using Error::Error;
};
// A rigorous result could not be produced within the configured budget.
struct PrecisionError : Error {
    using Error::Error;
};
// Sieve or memory budget exceeded.
struct ResourceError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};

// Working precision shared by all Reals created afterwards. Set once at
// startup (CLI --precision); individual values carry their own precision.
namespace precision {
void set_digits(int digits);
int digits();
mpfr_prec_t bits();
}  // namespace precision

// RAII wrapper around one mpfr_t at the current working precision.
class Real {
  public:
    Real();
    explicit Real(double d);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    static Real from_str(const std::string& s, mpfr_rnd_t rnd);

  private:
    mpfr_t v_;
};

int cmp(const Real& a, const Real& b);

// Decimal rendering with directed rounding, normalized scientific form,
// e.g. "2.3025850929940457e1". Used for certificates; parse back with
// Real::from_str.
std::string to_decimal(const Real& x, int digits, mpfr_rnd_t rnd);

// Closed interval [lo, hi] of extended reals. Every operation rounds
// outward, so the result contains the exact image of the operands.
class Enclosure {
  public:
    Enclosure();                    // [0, 0]
    explicit Enclosure(double x);   // exact double
    Enclosure(double lo, double hi);
    Enclosure(Real lo, Real hi);

    static Enclosure from_string(const std::string& s);  // decimal literal
    static Enclosure from_endpoints_str(const std::string& lo, const std::string& hi);
    static Enclosure from_long(long n);
    static Enclosure from_ulong(unsigned long n);
    static Enclosure from_mpz(mpz_srcptr z);

    const Real& lo() const { return lo_; }
    const Real& hi() const { return hi_; }

    bool is_finite() const { return lo_.is_finite() && hi_.is_finite(); }
    bool contains_zero() const;
    bool contains(const Real& x) const;
    bool contains(double x) const;

    Real width() const;  // hi - lo, rounded up
    Real mid() const;

    // certainly_* are decidable truths: false means "not provably".
    bool certainly_lt(const Enclosure& o) const;
    bool certainly_le(const Enclosure& o) const;
    bool certainly_positive() const { return lo_.sign() > 0; }
    bool certainly_nonnegative() const { return lo_.sign() >= 0; }

    Enclosure operator-() const;
    Enclosure abs() const;

    std::string str(int digits = 0) const;  // "[lo, hi]" for diagnostics

  private:
    void validate() const;
    Real lo_, hi_;
};

Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
Enclosure operator/(const Enclosure& a, const Enclosure& b);

Enclosure emin(const Enclosure& a, const Enclosure& b);
Enclosure emax(const Enclosure& a, const Enclosure& b);
Enclosure hull(const Enclosure& a, const Enclosure& b);
// Intersection; both must enclose the same true value, so an empty
// intersection is an internal error.
Enclosure intersect(const Enclosure& a, const Enclosure& b);

Enclosure exp(const Enclosure& x);
Enclosure log(const Enclosure& x);      // requires lo >= 0; lo == 0 gives -inf endpoint
Enclosure sqrt(const Enclosure& x);     // requires lo >= 0
Enclosure log_log(const Enclosure& x);  // requires lo > 1
Enclosure pow_int(const Enclosure& x, long n);
Enclosure pow(const Enclosure& x, const Enclosure& y);  // requires x.lo > 0

// Convenience constants/literals at working precision.
Enclosure euler_gamma();            // gamma
Enclosure exp_euler_gamma();        // e^gamma
Enclosure enc_pi();
Enclosure literal(const std::string& s);  // decimal literal as enclosure

}  // namespace renyi
