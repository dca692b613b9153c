#pragma once

#include "renyi/enclosure.hpp"

namespace renyi {

// Forward-mode derivative carried alongside an enclosure. Evaluating a
// function on Dual::variable(x) yields an enclosure of f(x) and of f'(x).
struct Dual {
    Enclosure v;
    Enclosure d;

    static Dual constant(const Enclosure& c) { return {c, Enclosure(0.0)}; }
    static Dual variable(const Enclosure& x) { return {x, Enclosure(1.0)}; }
};

inline Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator-(const Dual& a) { return {-a.v, -a.d}; }

inline Dual operator*(const Dual& a, const Dual& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d};
}

inline Dual operator/(const Dual& a, const Dual& b) {
    Enclosure q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
}

inline Dual exp(const Dual& a) {
    Enclosure e = exp(a.v);
    return {e, e * a.d};
}

inline Dual log(const Dual& a) { return {log(a.v), a.d / a.v}; }

inline Dual sqrt(const Dual& a) {
    Enclosure s = sqrt(a.v);
    return {s, a.d / (Enclosure(2.0) * s)};
}

inline Dual pow_int(const Dual& a, long n) {
    return {pow_int(a.v, n), Enclosure::from_long(n) * pow_int(a.v, n - 1) * a.d};
}

}  // namespace renyi
