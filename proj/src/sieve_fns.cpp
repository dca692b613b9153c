#include "renyi/sieve_fns.hpp"

#include <cmath>

#include "renyi/dual.hpp"
#include "renyi/quadrature.hpp"

namespace renyi {

namespace {

Enclosure point(const Real& r) { return Enclosure(r, r); }

Enclosure two_egamma() {
    static Enclosure v = Enclosure(2.0) * exp_euler_gamma();
    return v;
}

// F on (0,3]: 2 e^gamma / s
Enclosure F_initial(const Enclosure& s) { return two_egamma() / s; }

Enclosure clip_lo(const Enclosure& s, double m) {
    Real lo = s.lo();
    if (mpfr_cmp_d(lo.get(), m) < 0) mpfr_set_d(lo.get(), m, MPFR_RNDN);
    return Enclosure(lo, s.hi());
}

}  // namespace

// Marches both recurrences in lockstep with trapezoid steps whose error is
// bounded through derivative enclosures obtained from the recurrence itself.
class SieveMarcher {
  public:
    explicit SieveMarcher(SieveFnTable& t) : t_(t) {}

    void run() {
        const int shift = t_.shift_;
        const std::size_t n = t_.f_.size();
        Real h = step_real();
        Enclosure he = point(h);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            Real sa = t_.s_at(k), sb = t_.s_at(k + 1);
            frontier_ = k;
            // integral of f(t-1) over [sa, sb]
            Enclosure If = trapezoid(true, k, shift, he);
            Enclosure Fnew = (point(sa) * t_.F_[k] + If) / point(sb);
            // on (0,3] the closed form is exact; prefer it
            if (mpfr_cmp_d(sb.get(), 3.0) <= 0) Fnew = intersect(Fnew, F_initial(point(sb)));
            // monotone limits from the sieve literature: 1 <= F <= 2e^gamma
            Fnew = intersect(Fnew, Enclosure(Real(1.0), two_egamma().hi()));

            Enclosure IF = trapezoid(false, k, shift, he);
            Enclosure fnew = (point(sa) * t_.f_[k] + IF) / point(sb);
            fnew = intersect(fnew, Enclosure(0.0, 1.0));

            t_.F_[k + 1] = Fnew;
            t_.f_[k + 1] = fnew;
            if (mpfr_cmp_d(Fnew.width().get(), 1e-3) > 0 || mpfr_cmp_d(fnew.width().get(), 1e-3) > 0)
                throw PrecisionError("sieve function march: enclosure width exceeded 1e-3 at s=" +
                                     std::to_string(t_.s_at(k + 1).to_double()));
        }
    }

  private:
    SieveFnTable& t_;
    std::size_t frontier_ = 0;

    Real step_real() const {
        Real h;
        mpfr_set_d(h.get(), t_.step_, MPFR_RNDN);  // dyadic, exact
        return h;
    }

    // trapezoid enclosure of the integral of g(t-1) over one step, where
    // g = f (want_f) or g = F; k is the left grid index
    Enclosure trapezoid(bool want_f, std::size_t k, int shift, const Enclosure& he) {
        long ia = static_cast<long>(k) - shift;  // index of sa - 1
        Enclosure ga = value_at_index(want_f, ia);
        Enclosure gb = value_at_index(want_f, ia + 1);
        Enclosure base = he * (ga + gb) / Enclosure(2.0);
        Enclosure d = deriv_range(want_f, ia);
        Real rad;
        mpfr_div_ui(rad.get(), d.width().get(), 2, MPFR_RNDU);
        Enclosure emag = point(rad) * he * he / Enclosure(4.0);
        return base + hull(emag, -emag);
    }

    // g at grid index (may be below the s=2 origin)
    Enclosure value_at_index(bool want_f, long idx) {
        if (want_f) {
            if (idx <= 0) return Enclosure(0.0);  // f = 0 for s <= 2
            return t_.f_[static_cast<std::size_t>(idx)];
        }
        Real s = t_.s_at_long(idx);
        if (mpfr_cmp_d(s.get(), 3.0) <= 0) return F_initial(point(s));
        return t_.F_[static_cast<std::size_t>(idx)];
    }

    // hull of {g(t) : t in [grid[idx], grid[idx+1]]} via monotonicity
    Enclosure range_at(bool want_f, long idx) {
        Enclosure a = value_at_index(want_f, idx);
        Enclosure b = value_at_index(want_f, idx + 1);
        return hull(a, b);
    }

    // derivative hull of g over panel [grid[idx], grid[idx+1]] from the
    // recurrence: f'(t) = (F(t-1) - f(t))/t, F'(t) = (f(t-1) - F(t))/t.
    // The F form holds on the whole domain; f has a corner at 2 where the
    // left derivative is 0, so straddling panels take the hull with 0.
    Enclosure deriv_range(bool want_f, long idx) {
        Real s0 = t_.s_at_long(idx), s1 = t_.s_at_long(idx + 1);
        if (want_f && mpfr_cmp_d(s1.get(), 2.0) <= 0) return Enclosure(0.0);
        Enclosure t(s0, s1);
        Enclosure gself = range_at(want_f, idx);
        Enclosure gother = range_at(!want_f, idx - t_.shift_);
        Enclosure d = (gother - gself) / t;
        if (want_f && mpfr_cmp_d(s0.get(), 2.0) < 0) d = hull(d, Enclosure(0.0));
        return d;
    }
};

SieveFnTable::SieveFnTable(double s_max, double step) {
    if (s_max > 10.0 + 1e-12) throw DomainError("march_table: s_max <= 10 required");
    if (step > 0.01 + 1e-15) throw DomainError("march_table: step <= 0.01 required");
    if (s_max < 3.0) s_max = 3.0;
    // round step down to a dyadic 2^-j so that s-1 is a grid shift
    int j = 0;
    double st = 1.0;
    while (st > step + 1e-18) {
        st /= 2;
        ++j;
    }
    step_ = st;
    shift_ = 1 << j;
    std::size_t n = static_cast<std::size_t>(std::ceil((s_max - 2.0) / st)) + 1;
    s_max_ = 2.0 + st * static_cast<double>(n - 1);
    f_.assign(n, Enclosure(0.0));
    F_.assign(n, Enclosure(0.0));
    f_[0] = Enclosure(0.0);
    F_[0] = F_initial(Enclosure(2.0));
    SieveMarcher(*this).run();
}

Real SieveFnTable::s_at(std::size_t k) const { return s_at_long(static_cast<long>(k)); }

Real SieveFnTable::s_at_long(long k) const {
    Real s;
    mpfr_set_d(s.get(), step_, MPFR_RNDN);
    mpfr_mul_si(s.get(), s.get(), k, MPFR_RNDN);  // exact dyadic
    mpfr_add_ui(s.get(), s.get(), 2, MPFR_RNDN);
    return s;
}

// conservative index bracketing: widening by one step is sound, the hull
// only grows
long SieveFnTable::index_floor(const Real& x) const {
    double d = (x.to_double() - 2.0) / step_;
    long k = static_cast<long>(std::floor(d - 1e-9));
    if (k < 0) k = 0;
    if (k >= static_cast<long>(f_.size())) k = static_cast<long>(f_.size()) - 1;
    return k;
}

long SieveFnTable::index_ceil(const Real& x) const {
    double d = (x.to_double() - 2.0) / step_;
    long k = static_cast<long>(std::ceil(d + 1e-9));
    if (k < 0) k = 0;
    if (k >= static_cast<long>(f_.size())) k = static_cast<long>(f_.size()) - 1;
    return k;
}

bool SieveFnTable::covers(const Enclosure& s) const {
    return s.lo().sign() > 0 && mpfr_cmp_d(s.hi().get(), s_max_) <= 0;
}

Enclosure SieveFnTable::f_range(const Enclosure& t) const {
    // f nondecreasing; 0 below 2
    if (mpfr_cmp_d(t.hi().get(), 2.0) <= 0) return Enclosure(0.0);
    Real lo2 = t.lo();
    if (mpfr_cmp_d(lo2.get(), 2.0) < 0) mpfr_set_d(lo2.get(), 2.0, MPFR_RNDN);
    long ia = index_floor(lo2);
    long ib = index_ceil(t.hi());
    Enclosure lo_val = (ia <= 0) ? Enclosure(0.0) : f_[static_cast<std::size_t>(ia)];
    Enclosure hi_val = f_[static_cast<std::size_t>(ib)];
    Enclosure r(lo_val.lo(), hi_val.hi());
    if (mpfr_cmp_d(t.lo().get(), 2.0) < 0) r = hull(r, Enclosure(0.0));
    return r;
}

Enclosure SieveFnTable::F_range(const Enclosure& t) const {
    // F nonincreasing; closed form below 3
    if (mpfr_cmp_d(t.hi().get(), 3.0) <= 0) return F_initial(t);
    Enclosure r = [&] {
        Real lo3 = t.lo();
        if (mpfr_cmp_d(lo3.get(), 3.0) < 0) mpfr_set_d(lo3.get(), 3.0, MPFR_RNDN);
        long ia = index_floor(lo3);
        long ib = index_ceil(t.hi());
        const Enclosure& hi_val = F_[static_cast<std::size_t>(ia)];
        const Enclosure& lo_val = F_[static_cast<std::size_t>(ib)];
        return Enclosure(lo_val.lo(), hi_val.hi());
    }();
    if (mpfr_cmp_d(t.lo().get(), 3.0) < 0)
        r = hull(r, F_initial(Enclosure(t.lo(), Real(3.0))));
    return r;
}

Enclosure SieveFnTable::f_at(const Enclosure& s) const {
    if (!covers(s)) throw DomainError("sieve table does not cover " + s.str());
    return f_range(s);
}

Enclosure SieveFnTable::F_at(const Enclosure& s) const {
    if (!covers(s)) throw DomainError("sieve table does not cover " + s.str());
    return F_range(s);
}

const SieveFnTable& SieveFnTable::shared() {
    static SieveFnTable t(10.0, 1.0 / 256);
    return t;
}

namespace {

// inner integral J(t) = int_2^{t-1} log(u-1)/u du, with derivative
// J'(t) = log(t-2)/(t-1); zero for t <= 3
Enclosure inner_log_integral(const Enclosure& tminus1, const Enclosure& tol) {
    if (mpfr_cmp_d(tminus1.hi().get(), 2.0) <= 0) return Enclosure(0.0);
    EncFn g = [](const Enclosure& u) { return log(u - Enclosure(1.0)) / u; };
    DualFn dg = [](const Dual& u) { return log(u - Dual::constant(Enclosure(1.0))) / u; };
    return integrate(g, dg, Enclosure(2.0), tminus1, tol);
}

}  // namespace

Enclosure closed_form_f(const Enclosure& s, double tol) {
    if (s.lo().sign() <= 0) throw DomainError("closed_form_f requires s > 0");
    if (mpfr_cmp_d(s.hi().get(), 6.0) > 0)
        throw DomainError("closed_form_f only valid on (0, 6]");
    if (mpfr_cmp_d(s.hi().get(), 2.0) <= 0) return Enclosure(0.0);
    Enclosure tole(tol);

    // f(s) = (2 e^gamma / s) (log(s-1) + int_3^{s-1} (1/t) J1(t) dt),
    // J1(t) = int_2^{t-1} log(u-1)/u du
    Enclosure main = log(s - Enclosure(1.0));
    if (mpfr_cmp_d(s.hi().get(), 4.0) > 0) {
        Enclosure tolJ = tole / Enclosure(8.0);
        EncFn w = [&](const Enclosure& t) {
            return inner_log_integral(t - Enclosure(1.0), tolJ) / t;
        };
        DualFn dw = [&](const Dual& t) {
            Enclosure J = inner_log_integral(t.v - Enclosure(1.0), tolJ);
            // J'(t) = log(t-2)/(t-1)
            Enclosure Jp = log(t.v - Enclosure(2.0)) / (t.v - Enclosure(1.0));
            Dual Jd{J, Jp * t.d};
            return Jd / t;
        };
        Enclosure upper = s - Enclosure(1.0);
        main = main + integrate(w, dw, Enclosure(3.0), upper, tole / Enclosure(4.0));
    }
    Enclosure val = two_egamma() / s * main;
    if (mpfr_cmp_d(s.lo().get(), 2.0) < 0) val = hull(val, Enclosure(0.0));
    return intersect(val, Enclosure(0.0, 1.0));
}

Enclosure closed_form_F(const Enclosure& s, double tol) {
    if (s.lo().sign() <= 0) throw DomainError("closed_form_F requires s > 0");
    if (mpfr_cmp_d(s.hi().get(), 7.0) > 0)
        throw DomainError("closed_form_F only valid on (0, 7]");
    Enclosure tole(tol);
    Enclosure main(1.0);
    if (mpfr_cmp_d(s.hi().get(), 3.0) > 0)
        main = main + inner_log_integral(s - Enclosure(1.0), tole / Enclosure(4.0));
    if (mpfr_cmp_d(s.hi().get(), 5.0) > 0) {
        // int_2^{s-3} log(t-1)/t * Q(t) dt,
        // Q(t) = int_{t+2}^{s-1} (1/u) log((u-1)/(t+1)) du,
        // dQ/dt = -log((s-1)/(t+2)) / (t+1)
        Enclosure tolQ = tole / Enclosure(16.0);
        auto Q = [&](const Enclosure& t) {
            EncFn q = [&](const Enclosure& u) {
                return log((u - Enclosure(1.0)) / (t + Enclosure(1.0))) / u;
            };
            // a wide t makes the integrand itself wide; no point asking the
            // inner quadrature for more than that
            Enclosure tq = tolQ;
            double tw = t.width().to_double();
            if (tw > 1e-12) tq = emax(tq, Enclosure(tw));
            return integrate(q, t + Enclosure(2.0), s - Enclosure(1.0), tq);
        };
        EncFn w = [&](const Enclosure& t) { return log(t - Enclosure(1.0)) / t * Q(t); };
        DualFn dw = [&](const Dual& t) {
            Dual lead = log(t - Dual::constant(Enclosure(1.0))) / t;
            Enclosure Qv = Q(t.v);
            Enclosure Qp = -log((s - Enclosure(1.0)) / (t.v + Enclosure(2.0))) / (t.v + Enclosure(1.0));
            Dual Qd{Qv, Qp * t.d};
            return lead * Qd;
        };
        main = main + integrate(w, dw, Enclosure(2.0), s - Enclosure(3.0), tole / Enclosure(4.0));
    }
    Enclosure val = two_egamma() / s * main;
    return intersect(val, Enclosure(Real(1.0), val.hi()));
}

const Enclosure& f_at_6() {
    static Enclosure v = closed_form_f(Enclosure(6.0), 3e-8);
    return v;
}

const Enclosure& F_at_6() {
    static Enclosure v = closed_form_F(Enclosure(6.0), 3e-8);
    return v;
}

Enclosure eval_f(const Enclosure& s) {
    if (s.lo().sign() <= 0) throw DomainError("eval_f requires s > 0");
    bool first = true;
    Enclosure out;
    auto add = [&](const Enclosure& piece) {
        out = first ? piece : hull(out, piece);
        first = false;
    };
    if (mpfr_cmp_d(s.lo().get(), 2.0) <= 0) add(Enclosure(0.0));
    // [2,4]: one recurrence step, 2 e^gamma log(s-1)/s
    if (mpfr_cmp_d(s.hi().get(), 2.0) > 0 && mpfr_cmp_d(s.lo().get(), 4.0) < 0) {
        Enclosure c = intersect(s, Enclosure(2.0, 4.0));
        add(intersect(two_egamma() * log(c - Enclosure(1.0)) / c, Enclosure(0.0, 1.0)));
    }
    // (4,6): printed double-integral closed form, sharpened by the table
    if (mpfr_cmp_d(s.hi().get(), 4.0) > 0 && mpfr_cmp_d(s.lo().get(), 6.0) < 0) {
        Enclosure c = intersect(s, Enclosure(4.0, 6.0));
        Enclosure v = closed_form_f(c, 1e-8);
        const auto& tab = SieveFnTable::shared();
        if (tab.covers(c)) v = intersect(v, tab.f_at(c));
        add(v);
    }
    // [6, inf): monotone clamp [f(6), 1], sharpened by the table when covered
    if (mpfr_cmp_d(s.hi().get(), 6.0) >= 0) {
        Enclosure v(f_at_6().lo(), Real(1.0));
        const auto& tab = SieveFnTable::shared();
        Enclosure c = clip_lo(s, 6.0);
        if (tab.covers(c)) v = intersect(v, tab.f_at(c));
        add(v);
    }
    return out;
}

Enclosure eval_F(const Enclosure& s) {
    if (s.lo().sign() <= 0) throw DomainError("eval_F requires s > 0");
    bool first = true;
    Enclosure out;
    auto add = [&](const Enclosure& piece) {
        out = first ? piece : hull(out, piece);
        first = false;
    };
    if (mpfr_cmp_d(s.lo().get(), 3.0) < 0) {
        Enclosure c = s;
        if (mpfr_cmp_d(c.hi().get(), 3.0) > 0) c = intersect(s, Enclosure(0.0, 3.0));
        add(F_initial(c));
    }
    if (mpfr_cmp_d(s.hi().get(), 3.0) > 0 && mpfr_cmp_d(s.lo().get(), 6.0) < 0) {
        Enclosure c = intersect(s, Enclosure(3.0, 6.0));
        const auto& tab = SieveFnTable::shared();
        Enclosure v = tab.covers(c) ? tab.F_at(c) : closed_form_F(c, 1e-8);
        add(v);
    }
    if (mpfr_cmp_d(s.hi().get(), 6.0) >= 0) {
        Enclosure v(Real(1.0), F_at_6().hi());
        const auto& tab = SieveFnTable::shared();
        Enclosure c = clip_lo(s, 6.0);
        if (tab.covers(c)) v = intersect(v, tab.F_at(c));
        add(v);
    }
    return out;
}

Enclosure h_majorant(const Enclosure& s) {
    if (mpfr_cmp_d(s.lo().get(), 1.0) < 0) throw DomainError("h requires s >= 1");
    bool first = true;
    Enclosure out;
    auto add = [&](const Enclosure& piece) {
        out = first ? piece : hull(out, piece);
        first = false;
    };
    if (mpfr_cmp_d(s.lo().get(), 2.0) <= 0) add(exp(Enclosure(-2.0)));
    if (mpfr_cmp_d(s.hi().get(), 2.0) > 0 && mpfr_cmp_d(s.lo().get(), 3.0) < 0)
        add(exp(-intersect(s, Enclosure(2.0, 3.0))));
    if (mpfr_cmp_d(s.hi().get(), 3.0) > 0) {
        Enclosure c = clip_lo(s, 3.0);
        add(Enclosure(3.0) * exp(-c) / c);
    }
    return out;
}

Enclosure c_alpha(const Enclosure& N, int M, const Enclosure& alpha, const Enclosure& alpha1,
                  const Enclosure* scale_override) {
    if (mpfr_cmp_d(N.lo().get(), 16.0) < 0) throw DomainError("c_alpha requires N >= 16");
    Enclosure bracket = Enclosure(0.5) - alpha -
                        Enclosure(2.0) * alpha1 * log_log(N) / log(N);
    if (!bracket.certainly_positive())
        throw DomainError("c_alpha bracket not positive: " + bracket.str());
    Enclosure scale = scale_override ? *scale_override : Enclosure::from_long(M);
    return scale * bracket;
}

Enclosure m_bar(const Enclosure& alpha, const Enclosure& X2, int M, const Enclosure& alpha1,
                const Enclosure* scale_override) {
    Enclosure c = c_alpha(X2, M, alpha, alpha1, scale_override);
    return emax(Enclosure(1.0) - eval_f(c), eval_F(c) - Enclosure(1.0));
}

}  // namespace renyi
