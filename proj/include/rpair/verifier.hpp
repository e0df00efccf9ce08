#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rpair/catalog.hpp"
#include "rpair/error.hpp"
#include "rpair/expr.hpp"
#include "rpair/geometry.hpp"
#include "rpair/jet.hpp"
#include "rpair/quadrature.hpp"
#include "rpair/riccati.hpp"

namespace rpair {

/// Radial test function u(t) = profile(scale * t) on its support, zero outside.
class RadialTestFunction {
public:
    RadialTestFunction() = default;
    RadialTestFunction(std::string kind, std::string label, std::function<Jet(double)> profile, double support_lo,
                       double support_hi, std::vector<double> breakpoints = {})
        : kind_(std::move(kind)),
          label_(std::move(label)),
          profile_(std::move(profile)),
          lo_(support_lo),
          hi_(support_hi),
          breakpoints_(std::move(breakpoints)) {}

    [[nodiscard]] Jet operator()(double t) const {
        const double x = scale_ * t;
        if (x <= lo_ || x >= hi_) return {0.0, 0.0};
        const Jet v = profile_(x);
        return {v.v, scale_ * v.d};
    }

    /// u(lambda t).
    [[nodiscard]] RadialTestFunction scaled(double lambda) const {
        if (!(lambda > 0.0)) throw ParameterError("scale must be positive");
        RadialTestFunction out = *this;
        out.scale_ *= lambda;
        return out;
    }

    [[nodiscard]] double support_lo() const { return lo_ / scale_; }
    [[nodiscard]] double support_hi() const { return hi_ / scale_; }
    [[nodiscard]] std::vector<double> breakpoints() const {
        std::vector<double> out;
        for (double b : breakpoints_) out.push_back(b / scale_);
        return out;
    }
    [[nodiscard]] const std::string& kind() const { return kind_; }
    [[nodiscard]] std::string label() const {
        return scale_ == 1.0 ? label_ : label_ + " scaled by " + format_number(scale_);
    }

private:
    std::string kind_;
    std::string label_;
    std::function<Jet(double)> profile_;
    double lo_ = 0.0;
    double hi_ = std::numeric_limits<double>::infinity();
    std::vector<double> breakpoints_;
    double scale_ = 1.0;
};

/// exp(1 - 1/(1 - ((t - center)/width)^2)) on |t - center| < width.
[[nodiscard]] inline RadialTestFunction compact_bump(double center, double width) {
    if (!(width > 0.0) || !(center - width >= 0.0))
        throw ParameterError("compact_bump: need width > 0 and center >= width");
    return RadialTestFunction(
        "compact_bump", "compact_bump(" + format_number(center) + ", " + format_number(width) + ")",
        [center, width](double t) {
            const double x = (t - center) / width;
            const double q = 1.0 - x * x;
            if (q <= 0.0) return Jet(0.0, 0.0);
            const double v = std::exp(1.0 - 1.0 / q);
            return Jet(v, v * (-2.0 * x / (q * q)) / width);
        },
        center - width, center + width, {center});
}

/// t^{-(n-p)/p + eps} times a cutoff that is piecewise linear in log t: zero below r0, rising over
/// the first 3/8 of log(R/r0), flat over the middle quarter, falling to zero at R.
[[nodiscard]] inline RadialTestFunction power_cutoff(int n, double p, double eps, double r0, double R) {
    if (!(r0 > 0.0) || !(R > r0)) throw ParameterError("power_cutoff: need 0 < r0 < R");
    const double e = -(n - p) / p + eps;
    const double span = std::log(R / r0);
    auto profile = [e, r0, span](double t) {
        const double x = std::log(t / r0) / span;
        double phi = 0.0, dphi = 0.0;
        if (x < 0.375) {
            phi = x / 0.375;
            dphi = 1.0 / 0.375;
        } else if (x <= 0.625) {
            phi = 1.0;
        } else {
            phi = (1.0 - x) / 0.375;
            dphi = -1.0 / 0.375;
        }
        const double pw = std::pow(t, e);
        return Jet(pw * phi, pw * (e * phi + dphi / span) / t);
    };
    std::vector<double> cuts = {r0 * std::exp(0.375 * span), r0 * std::exp(0.625 * span)};
    for (double d = std::ceil(std::log10(r0)); std::pow(10.0, d) < R; d += 1.0) cuts.push_back(std::pow(10.0, d));
    return RadialTestFunction("power_cutoff",
                              "power_cutoff(" + format_number(eps) + ", " + format_number(r0) + ", " +
                                  format_number(R) + ")",
                              profile, r0, R, cuts);
}

/// exp(-t^gamma / p), gamma = 1 + alpha/(p - 1).
[[nodiscard]] inline RadialTestFunction gaussian_type(double alpha, double p) {
    if (!(p > 1.0)) throw ParameterError("gaussian_type: p must be > 1");
    const double gamma = 1.0 + alpha / (p - 1.0);
    if (!(gamma > 0.0)) throw ParameterError("gaussian_type: need 1 + alpha/(p - 1) > 0");
    return RadialTestFunction(
        "gaussian_type", "gaussian_type(" + format_number(alpha) + ", " + format_number(p) + ")",
        [gamma, p](double t) {
            const double tg = std::pow(t, gamma);
            const double v = std::exp(-tg / p);
            return Jet(v, -v * gamma * tg / (p * t));
        },
        0.0, std::numeric_limits<double>::infinity(), {1.0});
}

/// (1 + t^gamma)^{(p-1)/(p-r)}, gamma = 1 + alpha/(p - 1).
[[nodiscard]] inline RadialTestFunction talenti(double alpha, double p, double r) {
    if (!(p > 1.0) || r == p) throw ParameterError("talenti: need p > 1 and r != p");
    const double gamma = 1.0 + alpha / (p - 1.0);
    if (!(gamma > 0.0)) throw ParameterError("talenti: need 1 + alpha/(p - 1) > 0");
    const double e = (p - 1.0) / (p - r);
    return RadialTestFunction(
        "talenti", "talenti(" + format_number(alpha) + ", " + format_number(p) + ", " + format_number(r) + ")",
        [gamma, e](double t) {
            const double tg = std::pow(t, gamma);
            const double v = std::pow(1.0 + tg, e);
            return Jet(v, e * v / (1.0 + tg) * gamma * tg / t);
        },
        0.0, std::numeric_limits<double>::infinity(), {1.0});
}

/// A user expression in t, cut off at R (it should vanish there).
[[nodiscard]] inline RadialTestFunction dsl_test_function(const ScalarExpr& e, const ParamBinding& b, double R) {
    if (!(R > 0.0)) throw ParameterError("dsl test function: R must be positive");
    const RadialFunction f = RadialFunction::from_expr(e, b);
    return RadialTestFunction("dsl", "dsl(" + e.print() + ")", [f](double t) { return f(t); }, 0.0, R);
}

/// int_lo^hi f(t) n omega_n s_kappa^{n-1}(t) dt.
[[nodiscard]] inline QuadResult radial_integral_on(const ModelGeometry& g, const std::function<double(double)>& f,
                                                   double lo, double hi, double singular_hint = 0.0,
                                                   std::vector<double> breakpoints = {}, double rel_tol = 1e-12) {
    const double area = sphere_area(g.n);
    auto integrand = [&](double t) {
        const double v = f(t);
        return v == 0.0 ? 0.0 : v * area * volume_density(g, t);
    };
    QuadOptions opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = 1e-300;
    opt.breakpoints = std::move(breakpoints);
    opt.graded_lower = singular_hint < 0.0 && lo == 0.0;
    const QuadResult r = integrate(integrand, lo, hi, opt);
    if (!r.converged) throw ConvergenceError("radial quadrature did not converge on [" + format_number(lo) + ", " +
                                             format_number(hi) + "]");
    return r;
}

[[nodiscard]] inline QuadResult radial_integral(const ModelGeometry& g, const std::function<double(double)>& f,
                                                double R, double singular_hint = 0.0) {
    return radial_integral_on(g, f, 0.0, R, singular_hint);
}

struct InequalityMargin {
    double lhs = 0.0;
    double rhs = 0.0;
    /// (lhs - rhs) / max(|rhs|, 1e-300).
    double margin = 0.0;
    double quad_error = 0.0;
    /// lhs - rhs below -10 (quad_error + 1e-12 scale).
    bool violated = false;
    /// The pair (I, J) behind the right-hand side, when there is one.
    std::optional<double> I;
    std::optional<double> J;
    bool young_consistent = true;
};

[[nodiscard]] inline InequalityMargin make_margin(double lhs, double rhs, double error) {
    InequalityMargin m;
    m.lhs = lhs;
    m.rhs = rhs;
    m.quad_error = error;
    m.margin = (lhs - rhs) / std::max(std::fabs(rhs), 1e-300);
    const double scale = std::max(std::fabs(lhs), std::fabs(rhs));
    m.violated = lhs - rhs < -10.0 * (error + 1e-12 * scale);
    return m;
}

/// J^{1-p}|I|^p >= p I - (p - 1) J, the step between the multiplicative and additive forms.
[[nodiscard]] inline bool young_consistent(double I, double J, double p, double slack = 1e-9) {
    if (!(J > 0.0)) return true;
    const double mult = std::pow(std::fabs(I), p) * std::pow(J, 1.0 - p);
    const double add = p * I - (p - 1.0) * J;
    const double scale = std::max({std::fabs(mult), std::fabs(add), std::fabs(I), J});
    return mult >= add - slack * scale;
}

/// Ingredients of the generic additive and multiplicative inequalities for a radial rho = d:
/// weight w(t), G(t), H with H(0) = H'(0) = 0, and Delta rho (exact, or a lower bound when
/// G >= 0).
struct InequalitySetup {
    ModelGeometry geo;
    RadialFunction w;
    RadialFunction G;
    /// H(s) and H'(s).
    std::function<Jet(double)> H;
    RadialFunction laplacian;
    std::string label;
};

namespace detail {

inline std::function<Jet(double)> power_H(double r) {
    return [r](double s) {
        const double a = std::fabs(s);
        if (a == 0.0) return Jet(0.0, 0.0);
        return Jet(std::pow(a, r) / r, std::pow(a, r - 1.0) * (s > 0 ? 1.0 : -1.0));
    };
}

// s_c(x) for any real c: sinh, identity or sin profile.
inline Jet sc(double c, double x) {
    if (c < 0.0) {
        const double k = std::sqrt(-c);
        return {std::sinh(k * x) / k, std::cosh(k * x)};
    }
    if (c > 0.0) {
        const double k = std::sqrt(c);
        return {std::sin(k * x) / k, std::cos(k * x)};
    }
    return {x, 1.0};
}

struct Integrals {
    double lhs = 0.0, I = 0.0, J = 0.0, error = 0.0;
};

// LHS = int w|u'|^p, I = int [(G'w + G w') + G w Delta rho] H(u), J = int |G|^{p'} w |H'(u)|^{p'}.
inline Integrals inequality_integrals(const InequalitySetup& S, const RadialTestFunction& u, double lo, double hi) {
    const double p = S.geo.p;
    const double pc = S.geo.conjugate();
    const auto bp = u.breakpoints();
    const double hint = -1.0;
    auto lhs_f = [&](double t) {
        const Jet uj = u(t);
        if (uj.d == 0.0) return 0.0;
        return S.w.value(t) * std::pow(std::fabs(uj.d), p);
    };
    auto I_f = [&](double t) {
        const Jet uj = u(t);
        if (uj.v == 0.0) return 0.0;
        const Jet h = S.H(uj.v);
        if (h.v == 0.0) return 0.0;
        const Jet g = S.G(t);
        const Jet w = S.w(t);
        return ((g.d * w.v + g.v * w.d) + g.v * w.v * S.laplacian.value(t)) * h.v;
    };
    auto J_f = [&](double t) {
        const Jet uj = u(t);
        if (uj.v == 0.0) return 0.0;
        const Jet h = S.H(uj.v);
        if (h.d == 0.0) return 0.0;
        const double g = S.G.value(t);
        return std::pow(std::fabs(g), pc) * S.w.value(t) * std::pow(std::fabs(h.d), pc);
    };
    const QuadResult L = radial_integral_on(S.geo, lhs_f, lo, hi, hint, bp);
    const QuadResult I = radial_integral_on(S.geo, I_f, lo, hi, hint, bp);
    const QuadResult J = radial_integral_on(S.geo, J_f, lo, hi, hint, bp);
    return {L.value, I.value, J.value, L.error + p * I.error + (p - 1.0) * J.error};
}

inline std::pair<double, double> support_range(const RadialTestFunction& u, const Interval& I) {
    const double lo = u.support_lo(), hi = u.support_hi();
    if (lo < I.lo || hi > I.hi)
        throw ParameterError("test function support [" + format_number(lo) + ", " + format_number(hi) +
                             "] leaves the interval (" + format_number(I.lo) + ", " + format_number(I.hi) + ")");
    return {lo, hi};
}

}  // namespace detail

/// The Riccati-pair setup: H(s) = |s|^p/p and the exact model Laplacian of rho.
[[nodiscard]] inline InequalitySetup entry_setup(const RiccatiPairSpec& spec, const RadialFunction& G) {
    return {spec.geo, spec.w, G, detail::power_H(spec.geo.p), spec.rho_laplacian, "riccati pair"};
}

/// Generic form with user G(t), H(s) and w(t); Delta rho = (n - 1) ct_kappa.
[[nodiscard]] inline InequalitySetup generic_setup(const ModelGeometry& g, const ScalarExpr& G, const ScalarExpr& H,
                                                   const ParamBinding& binding, const ScalarExpr& w) {
    if (H.variable() != "s") throw ParameterError("H must be an expression in s");
    ParamBinding b = binding;
    b["kappa"] = g.kappa;
    b["n"] = g.n;
    b["p"] = g.p;
    const Jet h0 = H.eval_d(0.0, b);
    if (std::fabs(h0.v) > 1e-12 || std::fabs(h0.d) > 1e-12)
        throw ParameterError("H must satisfy H(0) = H'(0) = 0, got H(0) = " + format_number(h0.v) +
                             ", H'(0) = " + format_number(h0.d));
    auto shared = std::make_shared<const std::pair<ScalarExpr, ParamBinding>>(H, b);
    return {g,
            RadialFunction::from_expr(w, b),
            RadialFunction::from_expr(G, b),
            [shared](double s) { return shared->first.eval_d(s, shared->second); },
            comparison_function(g, ConstantCurvatureL{}),
            "generic"};
}

/// Uncertainty principle: G = t^alpha, H = |s|^p/p.
[[nodiscard]] inline InequalitySetup up_setup(const ModelGeometry& g, double alpha) {
    const double p = g.p;
    if (!(g.n > p) || !(-p + 1.0 < alpha && alpha <= 1.0))
        throw ParameterError("uncertainty principle needs n > p > 1 and 1 - p < alpha <= 1");
    return {g, RadialFunction::constant(1.0),
            RadialFunction([alpha](double t) { return Jet(std::pow(t, alpha), alpha * std::pow(t, alpha - 1.0)); },
                           "t^alpha"),
            detail::power_H(p), comparison_function(g, ConstantCurvatureL{}), "up"};
}

/// Caffarelli-Kohn-Nirenberg form: G = t^alpha, H = |s|^r/r.
[[nodiscard]] inline InequalitySetup ckn_setup(const ModelGeometry& g, double alpha, double r) {
    const double p = g.p;
    if (!(r > p) || !(alpha + p > 1.0) || !(p * (g.n + alpha - 1.0) > r * (g.n - p)) || !(g.n > p))
        throw ParameterError("CKN needs r > p > 1, alpha + p > 1 and p (n + alpha - 1) > r (n - p) > 0");
    return {g, RadialFunction::constant(1.0),
            RadialFunction([alpha](double t) { return Jet(std::pow(t, alpha), alpha * std::pow(t, alpha - 1.0)); },
                           "t^alpha"),
            detail::power_H(r), comparison_function(g, ConstantCurvatureL{}), "ckn"};
}

/// p = 2, G = 1, H = s_c(s)^2 and the floor Delta rho >= (n - 1) sqrt(-kappa).
[[nodiscard]] inline InequalitySetup sc_setup(const ModelGeometry& g, double c) {
    if (!(g.kappa < 0.0) || g.p != 2.0) throw ParameterError("s_c form needs kappa < 0 and p = 2");
    return {g, RadialFunction::constant(1.0), RadialFunction::constant(1.0),
            [c](double s) {
                const Jet v = detail::sc(c, s);
                return Jet(v.v * v.v, 2.0 * v.v * v.d);
            },
            comparison_function(g, ConstantFloorL{}), "sc"};
}

/// LHS = int w|u'|^p against p I - (p - 1) J.
[[nodiscard]] inline InequalityMargin additive_margin(const InequalitySetup& S, const RadialTestFunction& u,
                                                      const Interval& domain = {}) {
    const auto [lo, hi] = detail::support_range(u, domain);
    const auto in = detail::inequality_integrals(S, u, lo, hi);
    const double p = S.geo.p;
    InequalityMargin m = make_margin(in.lhs, p * in.I - (p - 1.0) * in.J, in.error);
    m.I = in.I;
    m.J = in.J;
    m.young_consistent = young_consistent(in.I, in.J, p);
    return m;
}

[[nodiscard]] inline InequalityMargin additive_margin(const RiccatiPairSpec& spec, const RadialFunction& G,
                                                      const RadialTestFunction& u) {
    return additive_margin(entry_setup(spec, G), u, spec.interval);
}

/// LHS = int w|u'|^p against |I|^p / J^{p-1}.
[[nodiscard]] inline InequalityMargin multiplicative_margin(const InequalitySetup& S, const RadialTestFunction& u,
                                                            const Interval& domain = {}) {
    const auto [lo, hi] = detail::support_range(u, domain);
    const auto in = detail::inequality_integrals(S, u, lo, hi);
    const double p = S.geo.p;
    if (!(in.J > in.error)) throw ConvergenceError("J is not resolved above its quadrature error");
    const double rhs = std::pow(std::fabs(in.I), p) / std::pow(in.J, p - 1.0);
    const double rel = in.error / std::max({std::fabs(in.I), in.J, 1e-300});
    InequalityMargin m = make_margin(in.lhs, rhs, in.error + p * p * rel * rhs);
    m.I = in.I;
    m.J = in.J;
    m.young_consistent = young_consistent(in.I, in.J, p);
    return m;
}

/// Quotient whose infimum over test functions is the sharp constant: for Riccati pairs
/// sharp * int w|u'|^p / int W w |u|^p; for multiplicative setups sharp * (int w|u'|^p)^{1/p} J^{1/p'} / |I|.
struct SweepMember {
    double family_param = 0.0;
    std::string label;
    InequalityMargin margin;
    double ratio = 0.0;
    bool skipped = false;
    std::string note;
};

struct SweepReport {
    std::string inequality;
    double sharp_constant = 0.0;
    std::vector<SweepMember> members;
    double min_margin = std::numeric_limits<double>::infinity();
    double ratio_min = std::numeric_limits<double>::infinity();
    double ratio_max = -std::numeric_limits<double>::infinity();
    bool any_violated = false;
    bool young_consistent = true;
};

using TestFamily = std::vector<std::pair<double, RadialTestFunction>>;

namespace detail {

inline void absorb(SweepReport& rep, SweepMember m) {
    if (!m.skipped) {
        rep.min_margin = std::min(rep.min_margin, m.margin.margin);
        rep.ratio_min = std::min(rep.ratio_min, m.ratio);
        rep.ratio_max = std::max(rep.ratio_max, m.ratio);
        rep.any_violated = rep.any_violated || m.margin.violated;
        rep.young_consistent = rep.young_consistent && m.margin.young_consistent;
    }
    rep.members.push_back(std::move(m));
}

}  // namespace detail

[[nodiscard]] inline SweepReport sharpness_sweep(const CatalogInstance& entry, const TestFamily& family) {
    SweepReport rep;
    rep.inequality = entry.name;
    rep.sharp_constant = entry.sharp_constant;
    const RiccatiPairSpec& spec = entry.spec;
    const double p = spec.geo.p;
    for (const auto& [param, u] : family) {
        SweepMember m;
        m.family_param = param;
        m.label = u.label();
        try {
            m.margin = additive_margin(spec, entry.G, u);
            auto potential = [&](double t) {
                const Jet uj = u(t);
                if (uj.v == 0.0) return 0.0;
                return spec.W.value(t) * spec.w.value(t) * std::pow(std::fabs(uj.v), p);
            };
            const QuadResult bottom =
                radial_integral_on(spec.geo, potential, u.support_lo(), u.support_hi(), -1.0, u.breakpoints());
            if (!(bottom.value > 0.0)) throw DomainError("int W w |u|^p is not positive");
            m.ratio = entry.sharp_constant * m.margin.lhs / bottom.value;
        } catch (const Error& ex) {
            m.skipped = true;
            m.note = ex.what();
        }
        detail::absorb(rep, std::move(m));
    }
    return rep;
}

[[nodiscard]] inline SweepReport sharpness_sweep(const InequalitySetup& S, double sharp_constant,
                                                 const TestFamily& family) {
    SweepReport rep;
    rep.inequality = S.label;
    rep.sharp_constant = sharp_constant;
    const double p = S.geo.p;
    for (const auto& [param, u] : family) {
        SweepMember m;
        m.family_param = param;
        m.label = u.label();
        try {
            m.margin = multiplicative_margin(S, u);
            const double three = std::pow(m.margin.lhs, 1.0 / p) * std::pow(*m.margin.J, (p - 1.0) / p);
            m.ratio = sharp_constant * three / std::fabs(*m.margin.I);
        } catch (const Error& ex) {
            m.skipped = true;
            m.note = ex.what();
        }
        detail::absorb(rep, std::move(m));
    }
    return rep;
}

/// Standard near-extremal family for Hardy-type constants: eps_k = 0.1 2^{-k}, r0_k = 10^{-4(k+1)}.
[[nodiscard]] inline TestFamily power_cutoff_family(int n, double p, int members = 15, double R = 1.0) {
    TestFamily fam;
    for (int k = 0; k < members; ++k) {
        const double eps = 0.1 * std::ldexp(1.0, -k);
        fam.emplace_back(eps, power_cutoff(n, p, eps, std::pow(10.0, -4.0 * (k + 1)), R));
    }
    return fam;
}

struct ExtremalCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double discrepancy = 0.0;
};

/// int |u0'|^p = (gamma/p)^p int t^{p' alpha} u0^p for u0 = exp(-t^gamma/p), gamma = 1 + alpha/(p - 1).
[[nodiscard]] inline ExtremalCheck extremal_identity_check(const ModelGeometry& g, double alpha) {
    const double p = g.p;
    const double gamma = 1.0 + alpha / (p - 1.0);
    if (g.kappa < 0.0 && !(gamma > 1.0))
        throw ParameterError("extremal identity with kappa < 0 needs gamma = 1 + alpha/(p - 1) > 1 (alpha > 0)");
    if (g.kappa == 0.0 && !(gamma > 0.0))
        throw ParameterError("extremal identity needs gamma = 1 + alpha/(p - 1) > 0");
    const RadialTestFunction u = gaussian_type(alpha, p);
    const double pc = g.conjugate();
    const double inf = std::numeric_limits<double>::infinity();
    auto lhs_f = [&](double t) { return std::pow(std::fabs(u(t).d), p); };
    auto rhs_f = [&](double t) { return std::pow(t, pc * alpha) * std::pow(u(t).v, p); };
    const double lhs = radial_integral_on(g, lhs_f, 0.0, inf, -1.0, {1.0}).value;
    const double rhs = std::pow(gamma / p, p) * radial_integral_on(g, rhs_f, 0.0, inf, -1.0, {1.0}).value;
    return {lhs, rhs, std::fabs(lhs - rhs) / std::fabs(rhs)};
}

struct GmPoint {
    double a, b, alpha, beta, m;
    int n;
    double min_G = 0.0;
    double argmin_t = 0.0;
    bool in_region = false;
};

/// alpha beta + sqrt(alpha beta (alpha beta + 2(n - 2m - 2))) <= 2 with a, b, alpha, beta > 0.
[[nodiscard]] inline bool gm_positivity_region(double a, double b, double alpha, double beta, double m, int n) {
    const double ab = alpha * beta;
    return a > 0 && b > 0 && alpha > 0 && beta > 0 && ab + std::sqrt(ab * (ab + 2.0 * (n - 2.0 * m - 2.0))) <= 2.0;
}

/// 200 parameter points with a, b > 0, alpha beta > 0 and m < (n - 2)/2.
[[nodiscard]] inline std::vector<GmPoint> gm_parameter_grid() {
    const std::vector<std::pair<int, double>> nm = {{3, -1.0}, {3, 0.0},  {4, -0.5}, {4, 0.0}, {4, 0.5},
                                                    {5, 0.0},  {5, 0.5},  {5, 1.0},  {6, 0.0}, {6, 1.0}};
    const std::vector<std::pair<double, double>> ab_pairs = {{0.5, 0.5}, {1.0, 1.0}, {2.0, 1.0}, {1.0, 3.0},
                                                             {-1.0, -1.0}};
    std::vector<GmPoint> out;
    for (const auto& [n, m] : nm)
        for (double a : {0.5, 2.0})
            for (double b : {0.5, 2.0})
                for (const auto& [alpha, beta] : ab_pairs) {
                    GmPoint pt{a, b, alpha, beta, m, n};
                    pt.in_region = gm_positivity_region(a, b, alpha, beta, m, n);
                    out.push_back(pt);
                }
    return out;
}

/// Minimum of G over `samples` log-spaced points of [t_lo, t_hi].
inline void gm_scan(GmPoint& pt, int samples = 400, double t_lo = 1e-4, double t_hi = 1e4) {
    const CatalogInstance inst = instantiate("ghoussoub_moradifam", {{"a", pt.a},
                                                                     {"b", pt.b},
                                                                     {"alpha", pt.alpha},
                                                                     {"beta", pt.beta},
                                                                     {"m", pt.m},
                                                                     {"n", static_cast<double>(pt.n)}});
    pt.min_G = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (samples - 1));
        const double g = inst.G.value(t);
        if (g < pt.min_G) {
            pt.min_G = g;
            pt.argmin_t = t;
        }
    }
}

}  // namespace rpair
