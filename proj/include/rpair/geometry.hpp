#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "rpair/error.hpp"
#include "rpair/jet.hpp"

namespace rpair {

/// Simply connected model space of constant curvature kappa <= 0 and dimension n,
/// together with the integrability exponent p used by the inequalities.
struct ModelGeometry {
    double kappa = 0.0;
    int n = 2;
    double p = 2.0;

    /// p' = p / (p - 1).
    [[nodiscard]] double conjugate() const { return p / (p - 1.0); }
    [[nodiscard]] double root_curvature() const { return std::sqrt(-kappa); }
};

inline void require_kappa(double kappa) {
    if (!(kappa <= 0.0) || !std::isfinite(kappa))
        throw ParameterError("curvature must be finite and <= 0, got " + std::to_string(kappa));
}

[[nodiscard]] inline ModelGeometry make_geometry(double kappa, int n, double p = 2.0) {
    require_kappa(kappa);
    if (n < 2) throw ParameterError("dimension must be >= 2, got " + std::to_string(n));
    if (!(p > 1.0) || !std::isfinite(p))
        throw ParameterError("exponent p must be > 1, got " + std::to_string(p));
    return {kappa, n, p};
}

namespace detail {

inline constexpr double kTaylorCut = 0.1;

inline void require_radius(double t, const char* what) {
    if (!(t >= 0.0)) throw DomainError(std::string(what) + ": radius must be >= 0");
}

// x coth x - 1 for small x.
inline double xcothx_minus_one_series(double x) {
    const double x2 = x * x;
    return x2 * (1.0 / 3.0 + x2 * (-1.0 / 45.0 + x2 * (2.0 / 945.0 + x2 * (-1.0 / 4725.0 + x2 * 2.0 / 93555.0))));
}

// d/dx (x coth x - 1) for small x.
inline double xcothx_slope_series(double x) {
    const double x2 = x * x;
    return x * (2.0 / 3.0 + x2 * (-4.0 / 45.0 + x2 * (12.0 / 945.0 + x2 * (-8.0 / 4725.0 + x2 * 20.0 / 93555.0))));
}

}  // namespace detail

/// ct_kappa(t) = s_kappa'(t) / s_kappa(t), the mean curvature of geodesic spheres divided by n - 1.
[[nodiscard]] inline double ct(double kappa, double t) {
    require_kappa(kappa);
    if (t == 0.0) throw PoleError("ct: pole at t = 0");
    detail::require_radius(t, "ct");
    if (kappa == 0.0) return 1.0 / t;
    const double a = std::sqrt(-kappa);
    return a / std::tanh(a * t);
}

[[nodiscard]] inline double s(double kappa, double t) {
    require_kappa(kappa);
    detail::require_radius(t, "s");
    if (kappa == 0.0) return t;
    const double a = std::sqrt(-kappa);
    return std::sinh(a * t) / a;
}

/// D_kappa(t) = t ct_kappa(t) - 1, extended by 0 at t = 0.
[[nodiscard]] inline double deficit(double kappa, double t) {
    require_kappa(kappa);
    detail::require_radius(t, "D");
    if (kappa == 0.0 || t == 0.0) return 0.0;
    const double x = std::sqrt(-kappa) * t;
    if (x < detail::kTaylorCut) return detail::xcothx_minus_one_series(x);
    return x / std::tanh(x) - 1.0;
}

[[nodiscard]] inline Jet ct(double kappa, Jet t) {
    const double c = ct(kappa, t.v);
    return chain(t, c, -kappa - c * c);
}

[[nodiscard]] inline Jet s(double kappa, Jet t) {
    const double value = s(kappa, t.v);
    const double slope = kappa == 0.0 ? 1.0 : std::cosh(std::sqrt(-kappa) * t.v);
    return chain(t, value, slope);
}

[[nodiscard]] inline Jet deficit(double kappa, Jet t) {
    const double value = deficit(kappa, t.v);
    if (kappa == 0.0 || t.v == 0.0) return chain(t, value, 0.0);
    const double a = std::sqrt(-kappa);
    const double x = a * t.v;
    double slope;
    if (x < detail::kTaylorCut) {
        slope = a * detail::xcothx_slope_series(x);
    } else {
        const double c = ct(kappa, t.v);
        slope = c + t.v * (-kappa - c * c);
    }
    return chain(t, value, slope);
}

[[nodiscard]] inline double ct(const ModelGeometry& g, double t) { return ct(g.kappa, t); }
[[nodiscard]] inline double s(const ModelGeometry& g, double t) { return s(g.kappa, t); }
[[nodiscard]] inline double deficit(const ModelGeometry& g, double t) { return deficit(g.kappa, t); }

/// Radial part of the Riemannian volume density, s_kappa^{n-1}.
[[nodiscard]] inline double volume_density(const ModelGeometry& g, double t) {
    return std::pow(s(g.kappa, t), g.n - 1);
}

/// Volume of the Euclidean unit ball in R^n.
[[nodiscard]] inline double unit_ball_volume(int n) {
    return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(1.0 + 0.5 * n);
}

/// Surface measure of the unit sphere S^{n-1}, n omega_n.
[[nodiscard]] inline double sphere_area(int n) { return n * unit_ball_volume(n); }

namespace detail {

// integral_0^X sinh^m(x) dx
inline double sinh_power_integral(int m, double X) {
    if (X < 2.0) {
        constexpr int terms = 40;
        std::vector<double> base(terms), power(terms, 0.0);
        double fact = 1.0;
        for (int k = 0; k < terms; ++k) {
            if (k > 0) fact *= (2.0 * k) * (2.0 * k + 1.0);
            base[k] = 1.0 / fact;
        }
        power[0] = 1.0;
        for (int r = 0; r < m; ++r) {
            std::vector<double> next(terms, 0.0);
            for (int i = 0; i < terms; ++i)
                for (int j = 0; i + j < terms; ++j) next[i + j] += power[i] * base[j];
            power = std::move(next);
        }
        const double x2 = X * X;
        double sum = 0.0;
        double xp = std::pow(X, m + 1);
        for (int j = 0; j < terms; ++j) {
            sum += power[j] * xp / (m + 2 * j + 1);
            xp *= x2;
        }
        return sum;
    }
    const double sh = std::sinh(X), ch = std::cosh(X);
    double even = X, odd = ch - 1.0;
    if (m == 0) return even;
    if (m == 1) return odd;
    double prev2 = (m % 2 == 0) ? even : odd;
    for (int k = (m % 2 == 0) ? 2 : 3; k <= m; k += 2) {
        prev2 = std::pow(sh, k - 1) * ch / k - (k - 1.0) / k * prev2;
    }
    return prev2;
}

}  // namespace detail

/// Volume of a geodesic ball of radius R in the model space.
[[nodiscard]] inline double ball_volume(const ModelGeometry& g, double R) {
    require_kappa(g.kappa);
    if (!(R >= 0.0)) throw DomainError("ball_volume: radius must be >= 0");
    if (g.kappa == 0.0) return unit_ball_volume(g.n) * std::pow(R, g.n);
    const double a = std::sqrt(-g.kappa);
    const int m = g.n - 1;
    return sphere_area(g.n) * detail::sinh_power_integral(m, a * R) / std::pow(a, m + 1);
}

/// Lower bound L(t) <= Delta rho available on a manifold with sectional curvature <= kappa.
struct ConstantCurvatureL {};
/// The uniform floor (n - 1) sqrt(-kappa); needs kappa < 0.
struct ConstantFloorL {};
/// Greene-Wu profile: L = (n - 1) psi' / psi for a user profile psi (value and derivative).
struct PsiL {
    std::function<Jet(double)> psi;
};

using ComparisonKind = std::variant<ConstantCurvatureL, ConstantFloorL, PsiL>;

[[nodiscard]] inline double comparison_L(const ModelGeometry& g, const ComparisonKind& kind, double t) {
    if (std::holds_alternative<ConstantCurvatureL>(kind)) return (g.n - 1) * ct(g.kappa, t);
    if (std::holds_alternative<ConstantFloorL>(kind)) {
        if (g.kappa == 0.0) throw ParameterError("constant_floor needs kappa < 0 (the floor is 0 for kappa = 0)");
        return (g.n - 1) * std::sqrt(-g.kappa);
    }
    const Jet psi = std::get<PsiL>(kind).psi(t);
    if (!(psi.v > 0.0)) throw DomainError("psi must be positive on (0, inf)");
    return (g.n - 1) * psi.d / psi.v;
}

}  // namespace rpair
