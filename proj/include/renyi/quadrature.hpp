#pragma once

#include <functional>

#include "renyi/dual.hpp"
#include "renyi/enclosure.hpp"

namespace renyi {

using EncFn = std::function<Enclosure(const Enclosure&)>;
using DualFn = std::function<Dual(const Dual&)>;

struct QuadOptions {
    int max_panels = 16384;
    int initial_panels = 8;
};

// Enclosure of the definite integral of f over [a, b] with width <= tol
// for smooth integrands. Adaptive bisection; each panel is bounded by the
// intersection of an interval-evaluation rectangle with a centered form
// driven by a derivative enclosure (when df is usable on the panel).
// Throws PrecisionError when the budget is exhausted before reaching tol.
Enclosure integrate(const EncFn& f, const DualFn& df, const Enclosure& a, const Enclosure& b,
                    const Enclosure& tol, const QuadOptions& opt = {});

Enclosure integrate(const EncFn& f, const Enclosure& a, const Enclosure& b, const Enclosure& tol,
                    const QuadOptions& opt = {});

// li(x) = PV integral_0^x dt/log t, on (0,1) by verified quadrature and on
// (1,inf) by the gamma + log log x + sum (log x)^k/(k k!) expansion.
// Intervals straddling 1 are rejected.
Enclosure log_integral(const Enclosure& x);

}  // namespace renyi
