#include "renyi/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <utility>
#include <vector>

namespace renyi {

namespace {

struct Panel {
    Real t0, t1;
    Enclosure value;
    double wscore;  // heuristic refinement priority
};

Enclosure point(const Real& r) { return Enclosure(r, r); }

// One panel bound: rectangle hull, sharpened by the centered form when the
// derivative enclosure is finite on the panel.
Enclosure panel_value(const EncFn& f, const DualFn* df, const Real& t0, const Real& t1) {
    Enclosure t(t0, t1);
    Enclosure w = point(t1) - point(t0);
    Enclosure rect = f(t) * w;
    if (df) {
        try {
            Dual d = (*df)(Dual::variable(t));
            if (d.d.is_finite()) {
                Real rad;
                mpfr_div_ui(rad.get(), d.d.width().get(), 2, MPFR_RNDU);
                Enclosure fm = f(point(t.mid()));
                Enclosure emag = Enclosure(Real(0.0), rad) * pow_int(w, 2) / Enclosure(4.0);
                Enclosure centered = fm * w + hull(emag, -emag);
                return intersect(rect, centered);
            }
        } catch (const Error&) {
            // derivative not evaluable here; rectangle bound stands
        }
    }
    return rect;
}

double width_score(const Enclosure& e) {
    double w = e.width().to_double();
    if (!std::isfinite(w)) return 1e300;
    return w;
}

Enclosure integrate_impl(const EncFn& f, const DualFn* df, const Enclosure& a, const Enclosure& b,
                         const Enclosure& tol, const QuadOptions& opt) {
    if (cmp(a.hi(), b.lo()) > 0) throw DomainError("integrate requires a <= b");
    if (!tol.certainly_positive()) throw DomainError("integrate tol must be positive");

    // The tolerance applies to the core interval [a.hi, b.lo]; uncertainty
    // coming from interval endpoints is irreducible and added afterwards.
    Real lo = a.hi(), hi = b.lo();
    int n0 = std::max(1, opt.initial_panels);

    std::vector<Real> pts(static_cast<size_t>(n0) + 1);
    pts[0] = lo;
    pts[static_cast<size_t>(n0)] = hi;
    for (int i = 1; i < n0; ++i) {
        Real t;
        mpfr_sub(t.get(), hi.get(), lo.get(), MPFR_RNDN);
        mpfr_mul_ui(t.get(), t.get(), static_cast<unsigned long>(i), MPFR_RNDN);
        mpfr_div_ui(t.get(), t.get(), static_cast<unsigned long>(n0), MPFR_RNDN);
        mpfr_add(t.get(), t.get(), lo.get(), MPFR_RNDN);
        pts[static_cast<size_t>(i)] = t;
    }

    std::vector<Panel> panels;
    double est_total = 0;
    for (int i = 0; i < n0; ++i) {
        Panel p{pts[static_cast<size_t>(i)], pts[static_cast<size_t>(i) + 1], Enclosure(), 0.0};
        if (cmp(p.t0, p.t1) >= 0) continue;  // zero-length (a == b)
        p.value = panel_value(f, df, p.t0, p.t1);
        p.wscore = width_score(p.value);
        est_total += p.wscore;
        panels.push_back(std::move(p));
    }

    auto total_width = [&]() {
        Real w(0.0);
        for (const auto& p : panels) mpfr_add(w.get(), w.get(), p.value.width().get(), MPFR_RNDU);
        return w;
    };

    // max-heap of (score, index); entries go stale after splits and are
    // skipped when the recorded score no longer matches
    std::priority_queue<std::pair<double, size_t>> heap;
    for (size_t i = 0; i < panels.size(); ++i) heap.emplace(panels[i].wscore, i);

    const double tol_d = tol.lo().to_double();
    while (!panels.empty()) {
        if (est_total <= tol_d * 0.9) {
            Real tw = total_width();
            est_total = tw.to_double();
            if (mpfr_cmp(tw.get(), tol.lo().get()) <= 0) break;
        }
        if (static_cast<int>(panels.size()) >= opt.max_panels) {
            Real tw = total_width();
            if (mpfr_cmp(tw.get(), tol.lo().get()) <= 0) break;
            throw PrecisionError("integrate: tolerance not reached within panel budget (width " +
                                 to_decimal(tw, 6, MPFR_RNDU) + ")");
        }
        if (heap.empty()) {
            Real tw = total_width();
            if (mpfr_cmp(tw.get(), tol.lo().get()) <= 0) break;
            throw PrecisionError("integrate: refinement stalled");
        }
        auto [score, idx] = heap.top();
        heap.pop();
        if (score != panels[idx].wscore) continue;  // stale
        Panel old = panels[idx];
        Real m;
        mpfr_add(m.get(), old.t0.get(), old.t1.get(), MPFR_RNDN);
        mpfr_div_ui(m.get(), m.get(), 2, MPFR_RNDN);
        if (mpfr_cmp(m.get(), old.t0.get()) <= 0 || mpfr_cmp(m.get(), old.t1.get()) >= 0)
            throw PrecisionError("integrate: panel no longer splittable at working precision");
        Panel left{old.t0, m, Enclosure(), 0.0};
        Panel right{m, old.t1, Enclosure(), 0.0};
        left.value = panel_value(f, df, left.t0, left.t1);
        left.wscore = width_score(left.value);
        right.value = panel_value(f, df, right.t0, right.t1);
        right.wscore = width_score(right.value);
        est_total += left.wscore + right.wscore - old.wscore;
        panels[idx] = std::move(left);
        heap.emplace(panels[idx].wscore, idx);
        panels.push_back(std::move(right));
        heap.emplace(panels.back().wscore, panels.size() - 1);
    }

    Enclosure total;
    for (const auto& p : panels) total = total + p.value;

    // endpoint uncertainty: integral over [a*, a.hi] and [b.lo, b*]
    if (cmp(a.lo(), a.hi()) < 0) total = total + f(a) * Enclosure(Real(0.0), a.width());
    if (cmp(b.lo(), b.hi()) < 0) total = total + f(b) * Enclosure(Real(0.0), b.width());
    return total;
}

}  // namespace

Enclosure integrate(const EncFn& f, const DualFn& df, const Enclosure& a, const Enclosure& b,
                    const Enclosure& tol, const QuadOptions& opt) {
    return integrate_impl(f, &df, a, b, tol, opt);
}

Enclosure integrate(const EncFn& f, const Enclosure& a, const Enclosure& b, const Enclosure& tol,
                    const QuadOptions& opt) {
    return integrate_impl(f, nullptr, a, b, tol, opt);
}

Enclosure log_integral(const Enclosure& x) {
    if (x.lo().sign() <= 0) throw DomainError("log_integral requires x > 0");
    if (x.contains(1.0)) throw DomainError("log_integral undefined on intervals containing 1");
    if (cmp(x.hi(), Real(1.0)) < 0) {
        // li(x) = integral_0^x dt/log t; the integrand vanishes at t=0+,
        // is negative and decreasing on (0,1).
        EncFn f = [](const Enclosure& t) { return Enclosure(1.0) / log(t); };
        DualFn df = [](const Dual& t) { return Dual::constant(Enclosure(1.0)) / log(t); };
        Enclosure zero(0.0);
        Enclosure scale = x / (-log(x));
        Real tl;
        mpfr_mul_d(tl.get(), scale.hi().get(), 1e-30, MPFR_RNDU);
        if (mpfr_cmp_d(tl.get(), 1e-90) < 0) mpfr_set_d(tl.get(), 1e-90, MPFR_RNDU);
        return integrate(f, df, zero, x, Enclosure(tl, tl), QuadOptions{});
    }
    // x > 1: gamma + log(log x) + sum_{k>=1} (log x)^k / (k * k!)
    Enclosure z = log(x);
    Enclosure sum = euler_gamma() + log(z);
    Enclosure term(1.0);  // z^k / k!
    long k = 1;
    Real zhi = z.hi();
    for (;; ++k) {
        term = term * z / Enclosure::from_long(k);
        sum = sum + term / Enclosure::from_long(k);
        // once k >= 2*log x the terms at least halve; geometric tail
        if (k > 4 && mpfr_cmp_d(zhi.get(), static_cast<double>(k) / 2.0) < 0) break;
        if (k > 100000) throw PrecisionError("log_integral series did not converge");
    }
    Enclosure tail_mag = (term * z / Enclosure::from_long(k + 1)).abs();
    Enclosure tail = hull(Enclosure(0.0), tail_mag * Enclosure(2.0));
    return sum + tail;
}

}  // namespace renyi
