#pragma once

#include <array>
#include <limits>
#include <type_traits>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "rpair/error.hpp"

namespace rpair {

namespace detail {

// Neumaier's variant of Kahan summation.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x)) carry += (sum - t) + x;
        else carry += (x - t) + sum;
        sum = t;
    }
    [[nodiscard]] double value() const { return sum + carry; }
};

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Lanczos approximation, g = 7, 9 terms; valid for x >= 0.5.
inline double gamma_lanczos(double x) {
    static constexpr double g = 7.0;
    static constexpr std::array<double, 9> coef = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    const double xm = x - 1.0;
    double a = coef[0];
    const double t = xm + g + 0.5;
    for (int i = 1; i < 9; ++i) a += coef[i] / (xm + i);
    const double lg = 0.5 * std::log(2.0 * std::numbers::pi) + (xm + 0.5) * std::log(t) - t + std::log(a);
    return std::exp(lg);
}

}  // namespace detail

[[nodiscard]] inline double gamma_fn(double x) {
    if (!std::isfinite(x)) throw DomainError("gamma: non-finite argument");
    if (detail::is_nonpositive_integer(x)) throw PoleError("gamma: pole at " + std::to_string(x));
    if (x > 171.6) throw UnsupportedRange("gamma: overflow for x = " + std::to_string(x));
    if (x < 0.5) {
        const double sp = std::sin(std::numbers::pi * x);
        return std::numbers::pi / (sp * detail::gamma_lanczos(1.0 - x));
    }
    // Small integers exactly, so that gamma_fn(n) = (n - 1)! to the last bit.
    if (x == std::floor(x) && x <= 20.0) {
        double f = 1.0;
        for (int k = 2; k < static_cast<int>(x); ++k) f *= k;
        return f;
    }
    return detail::gamma_lanczos(x);
}

/// 1 / Gamma(x), zero at the poles.
[[nodiscard]] inline double rgamma(double x) {
    if (detail::is_nonpositive_integer(x)) return 0.0;
    return 1.0 / gamma_fn(x);
}

namespace detail {

inline double besselj_series(double nu, double x) {
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    double term = std::pow(0.5 * x, nu) / gamma_fn(nu + 1.0);
    if (term == 0.0) return 0.0;
    const double q = -0.25 * x * x;
    CompensatedSum acc;
    acc.add(term);
    for (int k = 1; k < 1000; ++k) {
        term *= q / (k * (nu + k));
        acc.add(term);
        if (std::fabs(term) < 1e-17 * std::fabs(acc.value()) && k > 0.5 * x) return acc.value();
    }
    throw ConvergenceError("besselj: series did not converge");
}

// Miller's backward recurrence normalised by
// (x/2)^mu = sum_k (mu + 2k) Gamma(mu + k) / k! J_{mu+2k}(x),  mu = frac(nu).
inline double besselj_miller(double nu, double x) {
    const double mu = nu - std::floor(nu);
    const int target = static_cast<int>(std::floor(nu));
    int top = static_cast<int>(std::ceil(std::max(nu, x) + 60.0 + 3.0 * std::sqrt(x)));
    if (top % 2 != 0) ++top;

    // weights lambda_k = (mu + 2k) Gamma(mu + k) / k!
    std::vector<double> lambda(top / 2 + 1);
    lambda[0] = gamma_fn(mu + 1.0);
    double g = gamma_fn(mu + 1.0);  // Gamma(mu + k) / k! at k = 1
    for (int k = 1; k <= top / 2; ++k) {
        lambda[k] = (mu + 2.0 * k) * g;
        g *= (mu + k) / (k + 1.0);
    }

    double f_next = 0.0;
    double f = 1e-300;
    double norm = 0.0;
    double at_target = 0.0;
    for (int j = top; j >= 0; --j) {
        if (j % 2 == 0) norm += lambda[j / 2] * f;
        if (j == target) at_target = f;
        if (j == 0) break;
        const double f_prev = 2.0 * (mu + j) / x * f - f_next;
        f_next = f;
        f = f_prev;
        if (std::fabs(f) > 1e250) {
            f *= 1e-250;
            f_next *= 1e-250;
            norm *= 1e-250;
            at_target *= 1e-250;
        }
    }
    return at_target * std::pow(0.5 * x, mu) / norm;
}

inline double besselj_unchecked(double nu, double x) {
    if (x <= 12.0 || 0.25 * x * x <= nu + 1.0) return besselj_series(nu, x);
    return besselj_miller(nu, x);
}

inline void require_bessel_box(double nu, double x) {
    if (!(nu >= 0.0 && nu <= 50.0)) throw UnsupportedRange("besselj: order outside [0, 50]: " + std::to_string(nu));
    if (!(x >= 0.0 && x <= 200.0)) throw UnsupportedRange("besselj: argument outside [0, 200]: " + std::to_string(x));
}

inline double besselj_slope_unchecked(double nu, double x) {
    if (x == 0.0) {
        if (nu == 0.0 || nu > 1.0) return 0.0;
        if (nu == 1.0) return 0.5;
        throw PoleError("besselj: derivative unbounded at x = 0 for 0 < nu < 1");
    }
    return nu / x * besselj_unchecked(nu, x) - besselj_unchecked(nu + 1.0, x);
}

}  // namespace detail

/// Bessel function of the first kind J_nu(x) for 0 <= nu <= 50 and 0 <= x <= 200.
[[nodiscard]] inline double besselj(double nu, double x) {
    detail::require_bessel_box(nu, x);
    return detail::besselj_unchecked(nu, x);
}

/// dJ_nu/dx.
[[nodiscard]] inline double besselj_derivative(double nu, double x) {
    detail::require_bessel_box(nu, x);
    return detail::besselj_slope_unchecked(nu, x);
}

/// k-th positive zero of J_nu, nu in [0, 50], k in [1, 20].
[[nodiscard]] inline double bessel_zero(double nu, int k) {
    if (!(nu >= 0.0 && nu <= 50.0)) throw UnsupportedRange("bessel_zero: order outside [0, 50]");
    if (k < 1 || k > 20) throw UnsupportedRange("bessel_zero: index outside [1, 20]");

    // Locate the k-th sign change on a coarse scan starting below j_{nu,1} > nu.
    const double step = 0.25;
    double lo = std::max(nu, 1e-3);
    double f_lo = detail::besselj_unchecked(nu, lo);
    int found = 0;
    double hi = lo;
    double f_hi = f_lo;
    while (true) {
        hi = lo + step;
        f_hi = detail::besselj_unchecked(nu, hi);
        if ((f_lo > 0.0) != (f_hi > 0.0) && ++found == k) break;
        lo = hi;
        f_lo = f_hi;
        if (lo > 200.0) throw ConvergenceError("bessel_zero: bracket search failed");
    }

    // McMahon's expansion as the starting point of a bracketed Newton iteration.
    const double beta = (k + 0.5 * nu - 0.25) * std::numbers::pi;
    const double m4 = 4.0 * nu * nu;
    const double e8 = 8.0 * beta;
    double x = beta - (m4 - 1.0) / e8 - 4.0 * (m4 - 1.0) * (7.0 * m4 - 31.0) / (3.0 * e8 * e8 * e8);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);

    for (int it = 0; it < 100; ++it) {
        const double f = detail::besselj_unchecked(nu, x);
        if (f == 0.0) return x;
        if ((f > 0.0) == (f_lo > 0.0)) lo = x;
        else hi = x;
        const double df = detail::besselj_slope_unchecked(nu, x);
        double next = x - f / df;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - x) <= 1e-15 * x || hi - lo <= 4e-16 * x) return next;
        x = next;
    }
    throw ConvergenceError("bessel_zero: Newton iteration did not converge");
}

namespace detail {

inline double first_zero_cached(double nu) {
    thread_local double last_nu = -1.0;
    thread_local double last_zero = 0.0;
    if (nu != last_nu) {
        last_zero = bessel_zero(nu, 1);
        last_nu = nu;
    }
    return last_zero;
}

}  // namespace detail

/// J_{nu+1}(x) / J_nu(x) on 0 < x < j_{nu,1}.
[[nodiscard]] inline double bessel_ratio(double nu, double x) {
    if (!(nu >= 0.0 && nu <= 50.0)) throw UnsupportedRange("bessel_ratio: order outside [0, 50]");
    if (!(x > 0.0)) throw DomainError("bessel_ratio: argument must be > 0");
    if (!(x < detail::first_zero_cached(nu)))
        throw PoleError("bessel_ratio: argument must lie below the first zero of J_nu");
    return detail::besselj_unchecked(nu + 1.0, x) / detail::besselj_unchecked(nu, x);
}

/// d/dx of bessel_ratio, from the Riccati identity R' = 1 - (2 nu + 1) R / x + R^2.
[[nodiscard]] inline double bessel_ratio_derivative(double nu, double x) {
    const double r = bessel_ratio(nu, x);
    return 1.0 - (2.0 * nu + 1.0) * r / x + r * r;
}

namespace detail {

template <class Real>
struct HypValue {
    Real value;
    double cond;  // sum |terms| / |sum|, an a-posteriori loss-of-digits factor
};

template <class Real>
Real gamma_of(const Real& x) {
    if constexpr (std::is_same_v<Real, double>) return gamma_fn(x);
    else return boost::math::tgamma(x);
}

template <class Real>
Real rgamma_of(const Real& x) {
    using std::floor;
    if (x <= 0 && x == floor(x)) return Real(0);
    return Real(1) / gamma_of(x);
}

template <class Real>
HypValue<Real> hyp_series(const Real& a, const Real& b, const Real& c, const Real& w) {
    using std::abs;
    if (c <= 0 && c == floor(c)) throw PoleError("hyp2f1: c is a non-positive integer");
    Real term = 1, sum = 1, mass = 1;
    const Real eps = std::numeric_limits<Real>::epsilon();
    for (int k = 0; k < 200000; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * w;
        sum += term;
        mass += abs(term);
        if (term == 0 || (abs(term) <= eps * 1e-2 * abs(sum) && k > 2)) {
            const double cond = sum == 0 ? std::numeric_limits<double>::infinity()
                                         : static_cast<double>(mass / abs(sum));
            return {sum, cond};
        }
    }
    throw ConvergenceError("hyp2f1: series did not converge");
}

template <class Real>
bool is_nonpositive_integer_t(const Real& x) {
    using std::floor;
    return x <= 0 && x == floor(x);
}

// 2F1(a, b; c; w) for 0 <= w < 1.
template <class Real>
HypValue<Real> hyp_unit(const Real& a, const Real& b, const Real& c, const Real& w) {
    using std::abs;
    using std::pow;
    using std::round;
    if (w <= Real(0.75) || is_nonpositive_integer_t(a) || is_nonpositive_integer_t(b)) return hyp_series(a, b, c, w);
    const Real gap = c - a - b;
    const Real v = 1 - w;
    if (abs(gap - round(gap)) < 1e3 * std::sqrt(static_cast<double>(std::numeric_limits<Real>::epsilon()))) {
        if constexpr (std::is_same_v<Real, double>) {
            return {0.0, std::numeric_limits<double>::infinity()};
        } else {
            // Logarithmic case of the connection formula, taken as a symmetric limit.
            const Real delta = pow(std::numeric_limits<Real>::epsilon(), Real(0.4));
            const auto up = hyp_unit(a, Real(b + delta), c, w);
            const auto down = hyp_unit(a, Real(b - delta), c, w);
            return {(up.value + down.value) / 2, std::max(up.cond, down.cond)};
        }
    }
    const Real gc = gamma_of(c);
    const Real first = gc * gamma_of(gap) * rgamma_of(Real(c - a)) * rgamma_of(Real(c - b));
    const Real second = gc * gamma_of(Real(-gap)) * rgamma_of(a) * rgamma_of(b);
    Real out = 0, mass = 0;
    double cond = 1.0;
    if (first != 0) {
        const auto f = hyp_series(a, b, Real(1 - gap), v);
        out += first * f.value;
        mass += abs(first * f.value) * f.cond;
    }
    if (second != 0) {
        const auto f = hyp_series(Real(c - a), Real(c - b), Real(1 + gap), v);
        const Real t = second * pow(v, gap) * f.value;
        out += t;
        mass += abs(t) * f.cond;
    }
    cond = out == 0 ? std::numeric_limits<double>::infinity() : static_cast<double>(mass / abs(out));
    return {out, cond};
}

using Float50 = boost::multiprecision::cpp_bin_float_50;
using Float100 = boost::multiprecision::cpp_bin_float_100;

// Result is trusted when cond * epsilon stays below this bound.
inline constexpr double kHypTrust = 1e-13;

template <class Real>
bool hyp_trusted(const HypValue<Real>& h) {
    return std::isfinite(h.cond) &&
           h.cond * static_cast<double>(std::numeric_limits<Real>::epsilon()) <= kHypTrust;
}

}  // namespace detail

/// Gauss hypergeometric function 2F1(a, b; c; z) for z <= 0 and c > 0 (standard normalisation).
[[nodiscard]] inline double hyp2f1(double a, double b, double c, double z) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(z))
        throw DomainError("hyp2f1: non-finite argument");
    if (!(c > 0.0)) throw ParameterError("hyp2f1: c must be > 0");
    if (z > 0.0) throw UnsupportedRange("hyp2f1: only z <= 0 is supported");
    if (z == 0.0) return 1.0;
    if (b < a) std::swap(a, b);
    // Pfaff: F(a, b; c; z) = (1 - z)^{-a} F(a, c - b; c; z / (z - 1)).
    const double w = z / (z - 1.0);
    const double scale = std::pow(1.0 - z, -a);
    const auto fast = detail::hyp_unit<double>(a, c - b, c, w);
    if (detail::hyp_trusted(fast)) return scale * fast.value;
    // Cancellation: repeat in extended precision.
    const auto mid = detail::hyp_unit<detail::Float50>(a, detail::Float50(c) - b, c, detail::Float50(z) / (z - 1));
    if (detail::hyp_trusted(mid)) return scale * static_cast<double>(mid.value);
    const auto wide = detail::hyp_unit<detail::Float100>(a, detail::Float100(c) - b, c, detail::Float100(z) / (z - 1));
    if (detail::hyp_trusted(wide)) return scale * static_cast<double>(wide.value);
    throw ConvergenceError("hyp2f1: cancellation exceeds 100-digit working precision");
}

/// dF/dz = (a b / c) 2F1(a + 1, b + 1; c + 1; z).
[[nodiscard]] inline double hyp2f1_ratio_deriv(double a, double b, double c, double z) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return a * b / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, z);
}

}  // namespace rpair
