#include "renyi/enclosure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <sstream>

namespace renyi {

namespace precision {
namespace {
int g_digits = 60;
mpfr_prec_t g_bits = 216;  // ceil(60 * log2(10)) + guard

mpfr_prec_t bits_for(int digits) {
    return static_cast<mpfr_prec_t>(digits * 3.3219280948873623 + 16);
}
}  // namespace

void set_digits(int digits) {
    if (digits < 10 || digits > 10000)
        throw ConfigError("precision digits out of range [10, 10000]");
    g_digits = digits;
    g_bits = bits_for(digits);
}

int digits() { return g_digits; }
mpfr_prec_t bits() { return g_bits; }
}  // namespace precision

Real::Real() {
    mpfr_init2(v_, precision::bits());
    mpfr_set_nan(v_);
}

Real::Real(double d) {
    mpfr_init2(v_, precision::bits());
    mpfr_set_d(v_, d, MPFR_RNDN);  // doubles convert exactly
}

Real::Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::from_str(const std::string& s, mpfr_rnd_t rnd) {
    Real r;
    if (mpfr_set_str(r.get(), s.c_str(), 10, rnd) != 0 && !r.is_finite() && !r.is_nan()) {
        // inf is acceptable; a parse failure leaves NaN
    }
    if (r.is_nan()) throw ConfigError("unparsable numeric literal: " + s);
    return r;
}

int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.get(), b.get()); }

std::string to_decimal(const Real& x, int digits, mpfr_rnd_t rnd) {
    if (x.is_nan()) return "nan";
    if (x.is_inf()) return x.sign() > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(x.get())) return "0";
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), x.get(), rnd);
    std::string m(s);
    mpfr_free_str(s);
    bool neg = !m.empty() && m[0] == '-';
    std::string d = neg ? m.substr(1) : m;
    // strip trailing zeros but keep at least one digit
    size_t last = d.find_last_not_of('0');
    d = d.substr(0, std::max<size_t>(last + 1, 1));
    std::ostringstream out;
    if (neg) out << '-';
    out << d[0];
    if (d.size() > 1) out << '.' << d.substr(1);
    out << 'e' << (e - 1);
    return out.str();
}

void Enclosure::validate() const {
    if (lo_.is_nan() || hi_.is_nan())
        throw PrecisionError("enclosure endpoint is NaN");
    if (mpfr_cmp(lo_.get(), hi_.get()) > 0)
        throw Error("enclosure invariant lo <= hi violated");
}

Enclosure::Enclosure() : lo_(0.0), hi_(0.0) {}
Enclosure::Enclosure(double x) : lo_(x), hi_(x) { validate(); }
Enclosure::Enclosure(double lo, double hi) : lo_(lo), hi_(hi) { validate(); }
Enclosure::Enclosure(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) { validate(); }

Enclosure Enclosure::from_string(const std::string& s) {
    return Enclosure(Real::from_str(s, MPFR_RNDD), Real::from_str(s, MPFR_RNDU));
}

Enclosure Enclosure::from_endpoints_str(const std::string& lo, const std::string& hi) {
    return Enclosure(Real::from_str(lo, MPFR_RNDD), Real::from_str(hi, MPFR_RNDU));
}

Enclosure Enclosure::from_long(long n) {
    Real a, b;
    mpfr_set_si(a.get(), n, MPFR_RNDD);
    mpfr_set_si(b.get(), n, MPFR_RNDU);
    return Enclosure(std::move(a), std::move(b));
}

Enclosure Enclosure::from_ulong(unsigned long n) {
    Real a, b;
    mpfr_set_ui(a.get(), n, MPFR_RNDD);
    mpfr_set_ui(b.get(), n, MPFR_RNDU);
    return Enclosure(std::move(a), std::move(b));
}

Enclosure Enclosure::from_mpz(mpz_srcptr z) {
    Real a, b;
    mpfr_set_z(a.get(), z, MPFR_RNDD);
    mpfr_set_z(b.get(), z, MPFR_RNDU);
    return Enclosure(std::move(a), std::move(b));
}

bool Enclosure::contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

bool Enclosure::contains(const Real& x) const {
    return mpfr_cmp(lo_.get(), x.get()) <= 0 && mpfr_cmp(x.get(), hi_.get()) <= 0;
}

bool Enclosure::contains(double x) const { return contains(Real(x)); }

Real Enclosure::width() const {
    Real w;
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return w;
}

Real Enclosure::mid() const {
    Real m;
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_ui(m.get(), m.get(), 2, MPFR_RNDN);
    if (m.is_nan()) return Real(0.0);  // [-inf, inf]
    return m;
}

bool Enclosure::certainly_lt(const Enclosure& o) const {
    return mpfr_cmp(hi_.get(), o.lo_.get()) < 0;
}

bool Enclosure::certainly_le(const Enclosure& o) const {
    return mpfr_cmp(hi_.get(), o.lo_.get()) <= 0;
}

Enclosure Enclosure::operator-() const {
    Real a, b;
    mpfr_neg(a.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(b.get(), lo_.get(), MPFR_RNDU);
    return Enclosure(std::move(a), std::move(b));
}

Enclosure Enclosure::abs() const {
    if (lo_.sign() >= 0) return *this;
    if (hi_.sign() <= 0) return -*this;
    Real a(0.0), b;
    Real nl;
    mpfr_neg(nl.get(), lo_.get(), MPFR_RNDU);
    if (mpfr_cmp(nl.get(), hi_.get()) > 0)
        b = nl;
    else
        b = hi_;
    return Enclosure(std::move(a), std::move(b));
}

std::string Enclosure::str(int digits) const {
    if (digits <= 0) digits = 17;
    return "[" + to_decimal(lo_, digits, MPFR_RNDD) + ", " + to_decimal(hi_, digits, MPFR_RNDU) + "]";
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
    Real lo, hi;
    mpfr_add(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
    mpfr_add(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
    Real lo, hi;
    mpfr_sub(lo.get(), a.lo().get(), b.hi().get(), MPFR_RNDD);
    mpfr_sub(hi.get(), a.hi().get(), b.lo().get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
}

namespace {
// directed product of two endpoints; 0 * inf taken as 0 (valid for
// products of interval endpoints when the zero factor is exact)
void dmul(mpfr_ptr out, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) {
    if ((mpfr_zero_p(x) && mpfr_inf_p(y)) || (mpfr_zero_p(y) && mpfr_inf_p(x))) {
        mpfr_set_ui(out, 0, rnd);
        return;
    }
    mpfr_mul(out, x, y, rnd);
}
}  // namespace

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    Real lo, hi, t;
    mpfr_srcptr xs[2] = {a.lo().get(), a.hi().get()};
    mpfr_srcptr ys[2] = {b.lo().get(), b.hi().get()};
    bool first = true;
    for (auto* x : xs)
        for (auto* y : ys) {
            dmul(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), lo.get()) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
            dmul(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), hi.get()) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
    if (b.contains_zero())
        throw DomainError("division by interval containing zero: " + b.str());
    Real lo, hi, t;
    mpfr_srcptr xs[2] = {a.lo().get(), a.hi().get()};
    mpfr_srcptr ys[2] = {b.lo().get(), b.hi().get()};
    bool first = true;
    for (auto* x : xs)
        for (auto* y : ys) {
            mpfr_div(t.get(), x, y, MPFR_RNDD);
            if (mpfr_nan_p(t.get())) mpfr_set_ui(t.get(), 0, MPFR_RNDD);  // inf/inf across endpoints
            if (first || mpfr_cmp(t.get(), lo.get()) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
            mpfr_div(t.get(), x, y, MPFR_RNDU);
            if (mpfr_nan_p(t.get())) mpfr_set_ui(t.get(), 0, MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), hi.get()) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure emin(const Enclosure& a, const Enclosure& b) {
    Real lo = (cmp(a.lo(), b.lo()) <= 0) ? a.lo() : b.lo();
    Real hi = (cmp(a.hi(), b.hi()) <= 0) ? a.hi() : b.hi();
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure emax(const Enclosure& a, const Enclosure& b) {
    Real lo = (cmp(a.lo(), b.lo()) >= 0) ? a.lo() : b.lo();
    Real hi = (cmp(a.hi(), b.hi()) >= 0) ? a.hi() : b.hi();
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure hull(const Enclosure& a, const Enclosure& b) {
    Real lo = (cmp(a.lo(), b.lo()) <= 0) ? a.lo() : b.lo();
    Real hi = (cmp(a.hi(), b.hi()) >= 0) ? a.hi() : b.hi();
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure intersect(const Enclosure& a, const Enclosure& b) {
    Real lo = (cmp(a.lo(), b.lo()) >= 0) ? a.lo() : b.lo();
    Real hi = (cmp(a.hi(), b.hi()) <= 0) ? a.hi() : b.hi();
    if (cmp(lo, hi) > 0)
        throw Error("empty intersection of enclosures " + a.str() + " and " + b.str());
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure exp(const Enclosure& x) {
    Real lo, hi;
    mpfr_exp(lo.get(), x.lo().get(), MPFR_RNDD);
    mpfr_exp(hi.get(), x.hi().get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure log(const Enclosure& x) {
    if (x.lo().sign() < 0)
        throw DomainError("log of interval with negative endpoint: " + x.str());
    Real lo, hi;
    mpfr_log(lo.get(), x.lo().get(), MPFR_RNDD);  // log(0) = -inf
    mpfr_log(hi.get(), x.hi().get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure sqrt(const Enclosure& x) {
    if (x.lo().sign() < 0)
        throw DomainError("sqrt of interval with negative endpoint: " + x.str());
    Real lo, hi;
    mpfr_sqrt(lo.get(), x.lo().get(), MPFR_RNDD);
    mpfr_sqrt(hi.get(), x.hi().get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure log_log(const Enclosure& x) {
    Real one;
    mpfr_set_ui(one.get(), 1, MPFR_RNDN);
    if (mpfr_cmp(x.lo().get(), one.get()) <= 0)
        throw DomainError("log_log requires lo > 1: " + x.str());
    return log(log(x));
}

Enclosure pow_int(const Enclosure& x, long n) {
    if (n == 0) return Enclosure(1.0);
    if (n < 0) return Enclosure(1.0) / pow_int(x, -n);
    auto mono = [&](const Real& e, mpfr_rnd_t rnd) {
        Real r;
        mpfr_pow_si(r.get(), e.get(), n, rnd);
        return r;
    };
    if (n % 2 == 1 || x.lo().sign() >= 0)
        return Enclosure(mono(x.lo(), MPFR_RNDD), mono(x.hi(), MPFR_RNDU));
    if (x.hi().sign() <= 0)
        return Enclosure(mono(x.hi(), MPFR_RNDD), mono(x.lo(), MPFR_RNDU));
    // even power of a straddling interval
    Enclosure a = x.abs();
    return Enclosure(Real(0.0), mono(a.hi(), MPFR_RNDU));
}

Enclosure pow(const Enclosure& x, const Enclosure& y) {
    if (x.lo().sign() <= 0)
        throw DomainError("pow requires positive base: " + x.str());
    return exp(y * log(x));
}

Enclosure euler_gamma() {
    Real lo, hi;
    mpfr_const_euler(lo.get(), MPFR_RNDD);
    mpfr_const_euler(hi.get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure exp_euler_gamma() { return exp(euler_gamma()); }

Enclosure enc_pi() {
    Real lo, hi;
    mpfr_const_pi(lo.get(), MPFR_RNDD);
    mpfr_const_pi(hi.get(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure literal(const std::string& s) { return Enclosure::from_string(s); }

}  // namespace renyi
