#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rpair/error.hpp"
#include "rpair/expr.hpp"
#include "rpair/geometry.hpp"
#include "rpair/jet.hpp"
#include "rpair/ode.hpp"
#include "rpair/optimize.hpp"
#include "rpair/quadrature.hpp"

namespace rpair {

/// A function of the radial variable with its first derivative.
class RadialFunction {
public:
    using JetFn = std::function<Jet(double)>;
    using ValueFn = std::function<double(double)>;

    RadialFunction() = default;
    RadialFunction(JetFn jet, std::string description, ValueFn value = {})
        : jet_(std::move(jet)), value_(std::move(value)), description_(std::move(description)) {}

    [[nodiscard]] static RadialFunction from_expr(const ScalarExpr& e, const ParamBinding& b) {
        auto shared = std::make_shared<const std::pair<ScalarExpr, ParamBinding>>(e, b);
        return RadialFunction([shared](double t) { return shared->first.eval_d(t, shared->second); },
                              e.print(),
                              [shared](double t) { return shared->first.eval(t, shared->second); });
    }

    [[nodiscard]] static RadialFunction constant(double c) {
        return RadialFunction([c](double) { return Jet(c, 0.0); }, format_number(c));
    }

    [[nodiscard]] Jet operator()(double t) const { return jet_(t); }
    [[nodiscard]] double value(double t) const { return value_ ? value_(t) : jet_(t).v; }
    [[nodiscard]] const std::string& description() const { return description_; }
    [[nodiscard]] explicit operator bool() const { return static_cast<bool>(jet_); }

private:
    JetFn jet_;
    ValueFn value_;
    std::string description_;
};

/// Radial interval (lo, hi); hi may be +inf.
struct Interval {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();

    [[nodiscard]] bool contains(double t) const { return t > lo && t < hi; }
};

[[nodiscard]] inline RadialFunction comparison_function(const ModelGeometry& g, const ComparisonKind& kind) {
    const char* label = std::holds_alternative<ConstantCurvatureL>(kind) ? "constant_curvature"
                        : std::holds_alternative<ConstantFloorL>(kind)   ? "constant_floor"
                                                                          : "psi";
    if (std::holds_alternative<ConstantFloorL>(kind)) (void)comparison_L(g, kind, 1.0);
    return RadialFunction(
        [g, kind](double t) {
            if (std::holds_alternative<ConstantCurvatureL>(kind)) {
                const Jet c = ct(g.kappa, Jet::variable(t));
                return Jet((g.n - 1) * c.v, (g.n - 1) * c.d);
            }
            return Jet(comparison_L(g, kind, t), 0.0);
        },
        label);
}

/// Data of a weighted Riccati pair on a model space: weight w, comparison function L <= Delta rho,
/// potential W, and the sign requirement on G (dropped when L is the exact model Laplacian of rho).
struct RiccatiPairSpec {
    ModelGeometry geo;
    Interval interval;
    RadialFunction w;
    RadialFunction L;
    RadialFunction W;
    bool require_G_nonneg = true;
    /// Degree d with all residual terms O(t^d) as t -> 0; enables the t^{-d}-scaled residual.
    std::optional<double> homogeneity_degree;
    /// Exact Laplacian of rho on the model space; defaults to (n - 1) ct_kappa.
    RadialFunction rho_laplacian;
};

struct ResidualTerms {
    double residual = 0.0;
    double G = 0.0;
    double W = 0.0;
};

[[nodiscard]] inline ResidualTerms residual_terms(const RiccatiPairSpec& spec, const RadialFunction& G, double t) {
    const Jet g = G(t);
    const Jet w = spec.w(t);
    if (!(w.v > 0.0)) throw DomainError("weight must be positive at t = " + format_number(t));
    const double L = spec.L.value(t);
    const double W = spec.W.value(t);
    const double p = spec.geo.p;
    const double pc = spec.geo.conjugate();
    const double r = g.d + (w.d / w.v + L) * g.v - (p - 1.0) * std::pow(std::fabs(g.v), pc) - W;
    if (!std::isfinite(r)) throw DomainError("residual is not finite at t = " + format_number(t));
    return {r, g.v, W};
}

/// G' + (w'/w + L) G - (p - 1)|G|^{p'} - W.
[[nodiscard]] inline double residual(const RiccatiPairSpec& spec, const RadialFunction& G, double t) {
    return residual_terms(spec, G, t).residual;
}

enum class GridPolicy { Log, Uniform, Custom };

enum class Verdict { Certified, Failed, Inconclusive };

[[nodiscard]] inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "certified";
        case Verdict::Failed: return "failed";
        default: return "inconclusive";
    }
}

struct CertifyOptions {
    GridPolicy grid = GridPolicy::Log;
    int points = 512;
    std::vector<double> custom;
    double tol = 1e-8;
    /// Use t^{-d} residual scaling below t = 1 when the pair declares a homogeneity degree.
    bool scaled = true;
};

struct CertificationReport {
    Verdict verdict = Verdict::Inconclusive;
    std::optional<double> witness_t;
    std::string reason;
    std::vector<double> grid;
    /// residual / (1 + |W|) per grid point, after optional scaling.
    std::vector<double> residuals;
    std::vector<double> G;
    double min_residual = 0.0;
    double max_abs_residual = 0.0;
    double min_G = 0.0;
    double tolerance_used = 0.0;
};

namespace detail {

// Interior points clustered geometrically at both ends of the unit interval.
inline std::vector<double> logit_points(int count, double x_min, double x_max) {
    std::vector<double> xs(count);
    const double s0 = std::log(x_min / (1.0 - x_min));
    const double s1 = std::log(x_max / (1.0 - x_max));
    for (int i = 0; i < count; ++i) {
        const double s = s0 + (s1 - s0) * i / (count - 1);
        xs[i] = 1.0 / (1.0 + std::exp(-s));
    }
    return xs;
}

}  // namespace detail

/// Certification grid in the open interval: log-policy points are geometrically clustered at
/// both endpoints (an infinite upper end is handled through u = t / (1 + t)), plus 16 extra
/// points close to the lower endpoint.
[[nodiscard]] inline std::vector<double> certification_grid(const Interval& I, GridPolicy policy, int points,
                                                            const std::vector<double>& custom = {}) {
    if (!(I.lo >= 0.0) || !(I.hi > I.lo)) throw ParameterError("certification grid: need 0 <= lo < hi");
    std::vector<double> out;
    if (policy == GridPolicy::Custom) {
        for (double t : custom)
            if (I.contains(t)) out.push_back(t);
        if (out.empty()) throw ParameterError("custom grid has no point inside the interval");
        std::sort(out.begin(), out.end());
        return out;
    }
    if (points < 512) throw ParameterError("certification grid needs at least 512 points");
    const bool infinite = std::isinf(I.hi);
    const double u_lo = infinite ? I.lo / (1.0 + I.lo) : I.lo;
    const double u_hi = infinite ? 1.0 : I.hi;
    auto to_t = [&](double x) {
        const double u = u_lo + x * (u_hi - u_lo);
        return infinite ? u / (1.0 - u) : u;
    };
    std::vector<double> xs;
    if (policy == GridPolicy::Uniform) {
        for (int i = 0; i < points; ++i) xs.push_back((i + 0.5) / points);
    } else {
        xs = detail::logit_points(points, 1e-6, infinite ? 1.0 - 1e-6 : 1.0 - 1e-3);
    }
    for (double x : xs) out.push_back(to_t(x));
    for (int k = 0; k < 16; ++k) {
        if (I.lo > 0.0) out.push_back(I.lo * (1.0 + 1e-3 * std::pow(10.0, -k / 3.0)));
        else out.push_back(to_t(xs.front() * std::pow(10.0, -(k + 1) / 5.0)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    out.erase(std::remove_if(out.begin(), out.end(), [&](double t) { return !I.contains(t); }), out.end());
    return out;
}

/// Sampled certification that (spec, G) is a Riccati pair.
[[nodiscard]] inline CertificationReport certify(const RiccatiPairSpec& spec, const RadialFunction& G,
                                                 const CertifyOptions& opt = {}) {
    CertificationReport rep;
    rep.tolerance_used = opt.tol;
    rep.grid = certification_grid(spec.interval, opt.grid, opt.points, opt.custom);
    rep.min_residual = std::numeric_limits<double>::infinity();
    rep.min_G = std::numeric_limits<double>::infinity();
    double worst_t = rep.grid.front();
    double worst_G_t = rep.grid.front();
    for (double t : rep.grid) {
        ResidualTerms terms;
        try {
            terms = residual_terms(spec, G, t);
        } catch (const Error& ex) {
            rep.verdict = Verdict::Inconclusive;
            rep.witness_t = t;
            rep.reason = "evaluation failed at t = " + format_number(t) + ": " + ex.what();
            return rep;
        }
        double scale = 1.0;
        if (opt.scaled && spec.homogeneity_degree && t < 1.0) scale = std::pow(t, -*spec.homogeneity_degree);
        const double normalized = scale * terms.residual / (1.0 + scale * std::fabs(terms.W));
        rep.residuals.push_back(normalized);
        rep.G.push_back(terms.G);
        if (normalized < rep.min_residual) {
            rep.min_residual = normalized;
            worst_t = t;
        }
        rep.max_abs_residual = std::max(rep.max_abs_residual, std::fabs(normalized));
        if (terms.G < rep.min_G) {
            rep.min_G = terms.G;
            worst_G_t = t;
        }
    }
    if (rep.min_residual < -opt.tol) {
        rep.verdict = Verdict::Failed;
        rep.witness_t = worst_t;
        rep.reason = "residual below -tol";
    } else if (spec.require_G_nonneg && rep.min_G < -opt.tol) {
        rep.verdict = Verdict::Failed;
        rep.witness_t = worst_G_t;
        rep.reason = "G negative where the comparison is only a lower bound";
    } else {
        rep.verdict = Verdict::Certified;
    }
    return rep;
}

enum class Direction { Forward, Backward };

/// Integrates G' = W + (p - 1)|G|^{p'} - (w'/w + L) G from (t0, G0) and reports G at the samples,
/// which must lie on the side of t0 given by the direction.
[[nodiscard]] inline OdeSolution solve_ivp(const RiccatiPairSpec& spec, double t0, double G0, Direction direction,
                                           std::vector<double> samples, const OdeOptions& opt = {}) {
    if (!spec.interval.contains(t0)) throw DomainError("solve_ivp: t0 outside the interval");
    std::sort(samples.begin(), samples.end());
    if (direction == Direction::Backward) std::reverse(samples.begin(), samples.end());
    for (double t : samples)
        if ((direction == Direction::Forward && t < t0) || (direction == Direction::Backward && t > t0))
            throw ParameterError("solve_ivp: sample on the wrong side of t0");
    const double p = spec.geo.p;
    const double pc = spec.geo.conjugate();
    auto rhs = [&spec, p, pc](double t, double g) {
        const Jet w = spec.w(t);
        if (!(w.v > 0.0)) throw DomainError("weight must be positive");
        return spec.W.value(t) + (p - 1.0) * std::pow(std::fabs(g), pc) - (w.d / w.v + spec.L.value(t)) * g;
    };
    return integrate_scalar(rhs, t0, G0, samples, opt);
}

/// G = -|y'|^{p-2} y' / y^{p-1} for a positive radial profile y; G' by central differences of y'.
[[nodiscard]] inline RadialFunction bessel_to_riccati(const RadialFunction& y, double p) {
    if (!(p > 1.0)) throw ParameterError("bessel_to_riccati: p must be > 1");
    auto value = [y, p](double t) {
        const Jet v = y(t);
        if (!(v.v > 0.0)) throw DomainError("bessel_to_riccati: y must be positive");
        return -std::pow(std::fabs(v.d), p - 2.0) * v.d / std::pow(v.v, p - 1.0);
    };
    return RadialFunction(
        [value](double t) {
            const double h = 1e-5 * (1.0 + t);
            const double lo = std::max(t - h, 0.5 * t);
            const double hi = t + (t - lo);
            return Jet(value(t), (value(hi) - value(lo)) / (hi - lo));
        },
        "riccati(" + y.description() + ")", value);
}

/// y(t) = y_anchor exp(-int_anchor^t sgn(G)|G|^{1/(p-1)}); divergent integrals give 0 or +inf.
[[nodiscard]] inline RadialFunction riccati_to_bessel(const RadialFunction& G, double p, double anchor,
                                                      double y_anchor = 1.0) {
    if (!(p > 1.0)) throw ParameterError("riccati_to_bessel: p must be > 1");
    auto phi = [G, p](double t) {
        const double g = G.value(t);
        return (g > 0.0 ? 1.0 : g < 0.0 ? -1.0 : 0.0) * std::pow(std::fabs(g), 1.0 / (p - 1.0));
    };
    auto value = [phi, anchor, y_anchor](double t) {
        QuadOptions q;
        q.rel_tol = 1e-14;
        q.abs_tol = 1e-15;
        const double lo = std::min(t, anchor), hi = std::max(t, anchor);
        const double integral = integrate(phi, lo, hi, q).value * (t >= anchor ? 1.0 : -1.0);
        return y_anchor * std::exp(-integral);
    };
    return RadialFunction([value, phi](double t) {
        const double y = value(t);
        return Jet(y, -phi(t) * y);
    },
                          "bessel(" + G.description() + ")", value);
}

struct OptimalConstant {
    double c = 0.0;
    double value = 0.0;
};

/// Maximiser of c -> c b - (p - 1) c^{p'} a^p over c > 0.
[[nodiscard]] inline OptimalConstant optimize_constant(double a, double b, double p) {
    if (!(a > 0.0) || !(b > 0.0) || !(p > 1.0))
        throw ParameterError("optimize_constant: need a > 0, b > 0, p > 1");
    const double c = std::pow(b / (p * std::pow(a, p)), p - 1.0);
    const double value = std::pow(b, p) / (std::pow(p, p) * std::pow(a, p * (p - 1.0)));
    return {c, value};
}

/// The same maximisation by golden-section search in log c, bracketed by the positive root
/// of the objective.
[[nodiscard]] inline OptimalConstant optimize_constant_search(double a, double b, double p) {
    if (!(a > 0.0) || !(b > 0.0) || !(p > 1.0))
        throw ParameterError("optimize_constant_search: need a > 0, b > 0, p > 1");
    const double pc = p / (p - 1.0);
    auto objective = [&](double log_c) {
        const double c = std::exp(log_c);
        return c * b - (p - 1.0) * std::pow(c, pc) * std::pow(a, p);
    };
    const double log_root = (p - 1.0) * std::log(b / ((p - 1.0) * std::pow(a, p)));
    const auto [x, v] = golden_section_maximize(objective, log_root - 40.0, log_root, 1e-15);
    return {std::exp(x), v};
}

}  // namespace rpair
