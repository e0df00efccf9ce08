#pragma once

#include <cmath>

namespace rpair {

/// First-order dual number: value and derivative with respect to the radial variable.
struct Jet {
    double v = 0.0;
    double d = 0.0;

    constexpr Jet() = default;
    constexpr Jet(double value, double deriv = 0.0) : v(value), d(deriv) {}

    static constexpr Jet variable(double t) { return {t, 1.0}; }
};

constexpr Jet operator-(Jet a) { return {-a.v, -a.d}; }
constexpr Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d + b.d}; }
constexpr Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.d - b.d}; }
constexpr Jet operator*(Jet a, Jet b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
constexpr Jet operator/(Jet a, Jet b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }

/// Chain rule helper: f(a) where f(a.v) = value and f'(a.v) = slope.
constexpr Jet chain(Jet a, double value, double slope) { return {value, slope * a.d}; }

}  // namespace rpair
