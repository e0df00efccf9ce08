#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "rpair/config.hpp"
#include "rpair/error.hpp"
#include "rpair/expr.hpp"
#include "rpair/geometry.hpp"
#include "rpair/riccati.hpp"
#include "rpair/specfun.hpp"

namespace rpair {

/// A spec together with the candidate G it was built for.
struct BuiltSpec {
    RiccatiPairSpec spec;
    RadialFunction G;
};

namespace detail {

inline constexpr const char* kKindCurvature = "kind:constant_curvature";
inline constexpr const char* kKindFloor = "kind:constant_floor";
inline constexpr const char* kKindPsi = "kind:psi";
inline constexpr const char* kKindGreeneWu = "kind:greene_wu";

// psi'' by central differences of the exact psi'.
inline double psi_second(const RadialFunction& psi, double t) {
    const double h = std::min(1e-5 * (1.0 + t), 0.5 * t);
    return (psi(t + h).d - psi(t - h).d) / (2.0 * h);
}

}  // namespace detail

/// G = -1/(2t) + (n-1)/2 psi'/psi with the potential W making (G, W) an equality pair for
/// L = (n - 1) psi'/psi.
struct GreeneWuFunctions {
    RadialFunction G;
    RadialFunction W;
};

[[nodiscard]] inline GreeneWuFunctions greene_wu_functions(int n, const RadialFunction& psi) {
    const double m = n - 1.0;
    auto G = RadialFunction(
        [psi, m](double t) {
            const Jet f = psi(t);
            if (!(f.v > 0.0)) throw DomainError("psi must be positive");
            const double q = f.d / f.v;
            const double f2 = detail::psi_second(psi, t);
            return Jet(-0.5 / t + 0.5 * m * q, 0.5 / (t * t) + 0.5 * m * (f2 / f.v - q * q));
        },
        "greene_wu_G");
    auto W = RadialFunction(
        [psi, m](double t) {
            const Jet f = psi(t);
            if (!(f.v > 0.0)) throw DomainError("psi must be positive");
            const double f2 = detail::psi_second(psi, t);
            const double v = 0.25 * m * (2.0 * f2 / f.v + (m - 2.0) * (f.d * f.d - 1.0) / (f.v * f.v)) +
                             0.25 / (t * t) + m * (m - 2.0) / (4.0 * f.v * f.v);
            return Jet(v, 0.0);
        },
        "greene_wu_W");
    return {G, W};
}

/// Turns a textual configuration into evaluable functions.
[[nodiscard]] inline BuiltSpec build_spec(const SpecConfig& cfg) {
    BuiltSpec out;
    RiccatiPairSpec& spec = out.spec;
    spec.geo = make_geometry(cfg.kappa, cfg.n, cfg.p);
    if (!(cfg.lo >= 0.0) || !(cfg.hi > cfg.lo)) throw ParameterError("interval must satisfy 0 <= lo < hi");
    spec.interval = {cfg.lo, cfg.hi};

    ParamBinding binding = cfg.params;
    binding["kappa"] = cfg.kappa;
    binding["n"] = cfg.n;
    binding["p"] = cfg.p;

    auto expr = [&](const std::string& text, const char* what) {
        if (text.rfind("kind:", 0) == 0) throw ParameterError(std::string(what) + ": unexpected kind '" + text + "'");
        const ScalarExpr e = ScalarExpr::parse(text);
        for (const auto& name : e.params_required())
            if (!binding.count(name)) throw UnboundParameter(name);
        return RadialFunction::from_expr(e, binding);
    };

    RadialFunction psi;
    if (!cfg.psi.empty()) psi = expr(cfg.psi, "psi");
    auto need_psi = [&] {
        if (!psi) throw ParameterError("kind:psi and kind:greene_wu need a psi expression");
    };

    spec.w = expr(cfg.w, "w");
    if (cfg.L == detail::kKindCurvature) {
        spec.L = comparison_function(spec.geo, ConstantCurvatureL{});
    } else if (cfg.L == detail::kKindFloor) {
        spec.L = comparison_function(spec.geo, ConstantFloorL{});
    } else if (cfg.L == detail::kKindPsi) {
        need_psi();
        spec.L = comparison_function(spec.geo, PsiL{[psi](double t) { return psi(t); }});
    } else {
        spec.L = expr(cfg.L, "L");
    }

    const bool gw_G = cfg.G == detail::kKindGreeneWu;
    const bool gw_W = cfg.W == detail::kKindGreeneWu;
    if (gw_G || gw_W) {
        need_psi();
        const auto gw = greene_wu_functions(cfg.n, psi);
        if (gw_G) out.G = gw.G;
        if (gw_W) spec.W = gw.W;
    }
    if (!gw_G && !cfg.G.empty()) out.G = expr(cfg.G, "G");
    if (!gw_W) spec.W = expr(cfg.W, "W");

    spec.rho_laplacian = cfg.rho_laplacian.empty() ? comparison_function(spec.geo, ConstantCurvatureL{})
                                                   : expr(cfg.rho_laplacian, "rho_laplacian");
    spec.require_G_nonneg = cfg.require_G_nonneg.value_or(true);
    spec.homogeneity_degree = cfg.homogeneity_degree;
    return out;
}

struct ParamInfo {
    std::string name;
    std::string default_text;
    std::string meaning;
};

/// A catalog entry instantiated for concrete parameters.
struct CatalogInstance {
    std::string name;
    std::string citation;
    SpecConfig config;
    RiccatiPairSpec spec;
    RadialFunction G;
    double sharp_constant = 0.0;
    bool equality_expected = false;
    bool model_exact_L = false;
    /// False when G >= 0 is not covered by a theorem for these parameters.
    bool positivity_proven = true;
};

struct CatalogEntry {
    std::string name;
    std::string citation;
    std::string summary;
    std::vector<ParamInfo> params;
    std::function<CatalogInstance(const ParamBinding&, const std::string&)> build;
};

namespace detail {

class ParamReader {
public:
    ParamReader(const ParamBinding& given, std::vector<std::string> allowed) : given_(given) {
        for (const auto& [k, v] : given_)
            if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
                throw ParameterError("unknown parameter '" + k + "'");
    }

    double get(const std::string& name, double fallback) const {
        const auto it = given_.find(name);
        return it == given_.end() ? fallback : it->second;
    }

    int get_int(const std::string& name, int fallback) const {
        const double v = get(name, fallback);
        if (v != std::floor(v)) throw ParameterError(name + " must be an integer");
        return static_cast<int>(v);
    }

private:
    const ParamBinding& given_;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw ParameterError("hypothesis violated: " + what);
}

inline CatalogInstance finish(CatalogInstance inst) {
    BuiltSpec built = build_spec(inst.config);
    inst.spec = std::move(built.spec);
    inst.G = std::move(built.G);
    inst.config.entry = inst.name;
    return inst;
}

inline SpecConfig base_config(double kappa, int n, double p, double lo, double hi) {
    SpecConfig c;
    c.kappa = kappa;
    c.n = n;
    c.p = p;
    c.lo = lo;
    c.hi = hi;
    return c;
}

inline const std::vector<CatalogEntry>& registry() {
    static const std::vector<CatalogEntry> entries = [] {
        constexpr double inf = std::numeric_limits<double>::infinity();
        std::vector<CatalogEntry> v;

        v.push_back({"caccioppoli", "Caccioppoli-type inequality for the distance to the boundary",
                     "w = t^alpha, G = -(q/p)^(p-1) t^(1-p), W = (q/p)^p t^(-p), q = p - 1 - alpha; "
                     "rho = distance to the boundary of a model ball of radius R",
                     {{"kappa", "0", "curvature"}, {"n", "3", "dimension"}, {"p", "2", "exponent"},
                      {"alpha", "0", "weight power, alpha < p - 1"}, {"R", "1", "ball radius"}},
                     [](const ParamBinding& given, const std::string&) {
                         ParamReader r(given, {"kappa", "n", "p", "alpha", "R"});
                         const double kappa = r.get("kappa", 0), p = r.get("p", 2), alpha = r.get("alpha", 0),
                                      R = r.get("R", 1);
                         const int n = r.get_int("n", 3);
                         require(p - 1.0 - alpha > 0.0, "p - 1 - alpha > 0");
                         require(R > 0.0, "R > 0");
                         CatalogInstance inst;
                         inst.name = "caccioppoli";
                         auto& c = inst.config = base_config(kappa, n, p, 0.0, R);
                         c.params = {{"alpha", alpha}, {"R", R}, {"q", p - 1.0 - alpha}};
                         c.w = "t^alpha";
                         c.L = "-(n - 1)*ct(R - t)";
                         c.rho_laplacian = c.L;
                         c.G = "-((q/p)^(p - 1))*t^(1 - p)";
                         c.W = "(q/p)^p*t^(-p)";
                         c.require_G_nonneg = false;
                         c.homogeneity_degree = -p;
                         inst.sharp_constant = std::pow((p - 1.0 - alpha) / p, p);
                         inst.model_exact_L = true;
                         return finish(inst);
                     }});

        v.push_back({"caccioppoli_improved", "Caccioppoli-type inequality with logarithmic remainder, 1 < p <= 2",
                     "G = -((p-1)/p)^(p-1) t^(1-p) (1 + 1/log(t/(eR)))^(p-1), W = ((p-1)/p)^p t^(-p) (1 + R_p)",
                     {{"kappa", "0", "curvature"}, {"n", "3", "dimension"}, {"p", "2", "exponent in (1, 2]"},
                      {"R", "1", "ball radius"}},
                     [](const ParamBinding& given, const std::string&) {
                         ParamReader r(given, {"kappa", "n", "p", "R"});
                         const double kappa = r.get("kappa", 0), p = r.get("p", 2), R = r.get("R", 1);
                         const int n = r.get_int("n", 3);
                         require(p > 1.0 && p <= 2.0, "1 < p <= 2");
                         require(R > 0.0, "R > 0");
                         CatalogInstance inst;
                         inst.name = "caccioppoli_improved";
                         auto& c = inst.config = base_config(kappa, n, p, 0.0, R);
                         c.params = {{"R", R}};
                         c.L = "-(n - 1)*ct(R - t)";
                         c.rho_laplacian = c.L;
                         c.G = "-(((p - 1)/p)^(p - 1))*t^(1 - p)*(1 + 1/log(t/(exp(1)*R)))^(p - 1)";
                         c.W = "((p - 1)/p)^p*t^(-p)*(1 + 1/log(t/(exp(1)*R)))^(p - 2)*"
                               "(1 + (2 - p)/log(t/(exp(1)*R)) + 1/log(t/(exp(1)*R))^2)";
                         c.require_G_nonneg = false;
                         inst.sharp_constant = std::pow((p - 1.0) / p, p);
                         inst.model_exact_L = true;
                         return finish(inst);
                     }});

        v.push_back({"hardy", "Weighted Hardy inequality under a Laplacian floor",
                     "w = t^alpha, L = C/t, G = (q/(p t))^(p-1), W = (q/(p t))^p, q = C + 1 + alpha - p",
                     {{"kappa", "0", "curvature"}, {"n", "3", "dimension"}, {"p", "2", "exponent"},
                      {"alpha", "0", "weight power"}, {"C", "n - 1", "Laplacian floor, C <= n - 1"}},
                     [](const ParamBinding& given, const std::string&) {
                         ParamReader r(given, {"kappa", "n", "p", "alpha", "C"});
                         const double kappa = r.get("kappa", 0), p = r.get("p", 2), alpha = r.get("alpha", 0);
                         const int n = r.get_int("n", 3);
                         const double C = r.get("C", n - 1.0);
                         const double q = C + 1.0 + alpha - p;
                         require(q > 0.0, "C + 1 + alpha > p");
                         require(C <= n - 1.0, "C <= n - 1");
                         CatalogInstance inst;
                         inst.name = "hardy";
                         auto& c = inst.config = base_config(kappa, n, p, 0.0, inf);
                         c.params = {{"alpha", alpha}, {"C", C}, {"q", q}};
                         c.w = "t^alpha";
                         c.L = "C/t";
                         c.G = "(q/(p*t))^(p - 1)";
                         c.W = "(q/(p*t))^p";
                         c.homogeneity_degree = -p;
                         inst.sharp_constant = std::pow(q / p, p);
                         inst.equality_expected = true;
                         return finish(inst);
                     }});

        v.push_back({"hardy_log", "Hardy inequality with logarithmic weight on the unit ball",
                     "w = log(1/t)^alpha, L = (p-1)/t, G = c (t log(1/t))^(1-p), W = ((p-alpha-1)/p)^p (t log(1/t))^(-p)",
                     {{"kappa", "0", "curvature"}, {"n", "3", "dimension"}, {"p", "2", "exponent, 1 < p <= n"},
                      {"alpha", "0", "log power, alpha + 1 < p"}},
                     [](const ParamBinding& given, const std::string&) {
                         ParamReader r(given, {"kappa", "n", "p", "alpha"});
                         const double kappa = r.get("kappa", 0), p = r.get("p", 2), alpha = r.get("alpha", 0);
                         const int n = r.get_int("n", 3);
                         require(p > 1.0 && p <= n, "1 < p <= n");
                         require(alpha + 1.0 < p, "alpha + 1 < p");
                         const double k = (p - alpha - 1.0) / p;
                         CatalogInstance inst;
                         inst.name = "hardy_log";
                         auto& c = inst.config = base_config(kappa, n, p, 0.0, 1.0);
                         c.params = {{"alpha", alpha}, {"c", std::pow(k, p - 1.0)}, {"k", k}};
                         c.w = "log(1/t)^alpha";
                         c.L = "(p - 1)/t";
                         c.G = "c*(t*log(1/t))^(1 - p)";
                         c.W = "k^p*(t*log(1/t))^(-p)";
                         inst.sharp_constant = std::pow(k, p);
                         inst.equality_expected = true;
                         return finish(inst);
                     }});

        v.push_back({"acr", "Adimurthi-Chaudhuri-Ramaswamy logarithmic remainder",
                     "p = 2, G = (n-2)/(2t) + 1/(2t log(eD/t)), W = (n-2)^2/(4t^2) + 1/(4 t^2 log^2(t/(eD)))",
                     {{"kappa", "0", "curvature"}, {"n", "3", "dimension >= 3"}, {"D", "1", "domain radius"}},
                     [](const ParamBinding& given, const std::string&) {
                         ParamReader r(given, {"kappa", "n", "D", "p"});
                         const double kappa = r.get("kappa", 0), D = r.get("D", 1);
                         const int n = r.get_int("n", 3);
                         require(r.get("p", 2) == 2.0, "p = 2");
                         require(n >= 3, "n >= 3");
                         require(D > 0.0, "D > 0");
                         CatalogInstance inst;
                         inst.name = "acr";
                         auto& c = inst.config = base_config(kappa, n, 2.0, 0.0, D);
                         c.params = {{"D", D}};
                         c.L = "(n - 1)/t";
                         c.G = "(n - 2)/(2*t) + 1/(2*t*log(exp(1)*D/t))";
                         c.W = "(n - 2)^2/(4*t^2) + 1/(4*t^2*log(t/(exp(1)*D))^2)";
                         c.homogeneity_degree = -2.0;
                         inst.sharp_constant = 0.25;
                         inst.equality_expected = true;
                         return finish(inst);
                     }});

        auto bessel_instance = [](const std::string& name, double kappa, int n,
                                  double nu, double D) {
            const double C = std::pow(bessel_zero(nu, 1) / D, 2);
            CatalogInstance inst;
            inst.name = name;
            auto& c = inst.config = base_config(kappa, n, 2.0, 0.0, D);
            c.params = {{"nu", nu}, {"D", D}, {"C", C}, {"sC", std::sqrt(C)}};
            c.L = "(n - 1)/t";
            c.G = "(n - 2 - 2*nu)/(2*t) + sC*besselratio(nu, sC*t)";
            c.W = "((n - 2)^2/4 - nu^2)/t^2 + C";
            if ((n - 2.0) * (n - 2.0) / 4.0 - nu * nu > 0.0) c.homogeneity_degree = -2.0;
            inst.sharp_constant = C;
            inst.equality_expected = true;
            return finish(inst);
        };

        v.push_back({"brezis_vazquez", "Brezis-Vazquez remainder with a Bessel-zero constant",
                     "p = 2, C = j_{nu,1}^2/D^2, G = (n-2-2nu)/(2t) + sqrt(C) J_{nu+1}/J_nu(sqrt(C) t), "
                     "W = ((n-2)^2/4 - nu^2)/t^2 + C",
                     {{"kappa", "0", "curvature"}, {"n", "3", "dimension"},
                      {"nu", "0", "Bessel order in [0, (n-2)/2]"}, {"D", "1", "domain radius"}},
                     [bessel_instance](const ParamBinding& given, const std::string&) {
                         ParamReader r(given, {"kappa", "n", "nu", "D", "p"});
                         const int n = r.get_int("n", 3);
                         const double nu = r.get("nu", 0), D = r.get("D", 1);
                         require(r.get("p", 2) == 2.0, "p = 2");
                         require(nu >= 0.0 && nu <= (n - 2.0) / 2.0, "0 <= nu <= (n - 2)/2");
                         require(D > 0.0, "D > 0");
                         return bessel_instance("brezis_vazquez", r.get("kappa", 0), n, nu, D);
                     }});

        v.push_back({"faber_krahn", "Faber-Krahn first eigenvalue of a ball",
                     "p = 2, nu = (n-2)/2, W = C = j_{nu,1}^2/R^2, G = sqrt(C) J_{n/2}/J_{n/2-1}(sqrt(C) t)",
                     {{"kappa", "0", "curvature"}, {"n", "2", "dimension"}, {"R", "1", "ball radius"}},
                     [bessel_instance](const ParamBinding& given, const std::string&) {
                         ParamReader r(given, {"kappa", "n", "R", "p"});
                         const int n = r.get_int("n", 2);
                         const double R = r.get("R", 1);
                         require(r.get("p", 2) == 2.0, "p = 2");
                         require(n >= 2, "n >= 2");
                         require(R > 0.0, "R > 0");
                         return bessel_instance("faber_krahn", r.get("kappa", 0), n, (n - 2.0) / 2.0, R);
                     }});

        auto mckean_instance = [](const ParamBinding& given, bool improved) {
            ParamReader r(given, {"kappa", "n", "p"});
            const double kappa = r.get("kappa", -1), p = r.get("p", 2);
            const int n = r.get_int("n", 2);
            require(kappa < 0.0, "kappa < 0");
            const double b = (n - 1.0) * std::sqrt(-kappa);
            const OptimalConstant opt = optimize_constant(1.0, b, p);
            CatalogInstance inst;
            inst.name = improved ? "mckean_improved" : "mckean";
            auto& c = inst.config = base_config(kappa, n, p, 0.0, std::numeric_limits<double>::infinity());
            c.params = {{"cG", opt.c}, {"cW", opt.value}};
            c.G = "cG";
            if (improved) {
                c.L = kKindCurvature;
                c.W = "cW + (n - 1)^p/p^(p - 1)*(-kappa)^(p/2)*(coth(sqrt(-kappa)*t) - 1)";
                c.require_G_nonneg = false;
                inst.model_exact_L = true;
            } else {
                c.L = kKindFloor;
                c.W = "cW";
            }
            inst.sharp_constant = opt.value;
            inst.equality_expected = true;
            return finish(inst);
        };

        v.push_back({"mckean", "McKean spectral gap",
                     "L = (n-1) sqrt(-kappa), G = ((n-1) sqrt(-kappa)/p)^(p-1), W = ((n-1) sqrt(-kappa)/p)^p",
                     {{"kappa", "-1", "curvature < 0"}, {"n", "2", "dimension"}, {"p", "2", "exponent"}},
                     [mckean_instance](const ParamBinding& given, const std::string&) {
                         return mckean_instance(given, false);
                     }});

        v.push_back({"mckean_improved", "McKean spectral gap with the exact model Laplacian",
                     "L = (n-1) ct_kappa, G as McKean, W = McKean + (n-1)^p/p^(p-1) (-kappa)^(p/2) (coth - 1)",
                     {{"kappa", "-1", "curvature < 0"}, {"n", "2", "dimension"}, {"p", "2", "exponent"}},
                     [mckean_instance](const ParamBinding& given, const std::string&) {
                         return mckean_instance(given, true);
                     }});

        v.push_back({"interpolation", "Interpolation between the Hardy and McKean inequalities",
                     "p = 2, gamma = sqrt((n-1)^2 - 4 lambda), h = (gamma + 1)/2, "
                     "G = -h/t + ((n-2)/2 + h) ct_kappa",
                     {{"kappa", "-1", "curvature < 0"}, {"n", "3", "dimension >= 3"},
                      {"lambda", "(n-1)^2/4", "in [n - 2, (n-1)^2/4]"}},
                     [](const ParamBinding& given, const std::string&) {
                         ParamReader r(given, {"kappa", "n", "lambda", "p"});
                         const double kappa = r.get("kappa", -1);
                         const int n = r.get_int("n", 3);
                         const double lambda = r.get("lambda", (n - 1.0) * (n - 1.0) / 4.0);
                         require(r.get("p", 2) == 2.0, "p = 2");
                         require(n >= 3, "n >= 3");
                         require(kappa < 0.0, "kappa < 0");
                         require(lambda >= n - 2.0 && lambda <= (n - 1.0) * (n - 1.0) / 4.0,
                                 "n - 2 <= lambda <= (n-1)^2/4");
                         const double gam = std::sqrt((n - 1.0) * (n - 1.0) - 4.0 * lambda);
                         const double h = 0.5 * (gam + 1.0);
                         CatalogInstance inst;
                         inst.name = "interpolation";
                         auto& c = inst.config = base_config(kappa, n, 2.0, 0.0, inf);
                         c.params = {{"lambda", lambda}, {"gam", gam}, {"h", h}};
                         c.L = kKindCurvature;
                         c.G = "-h/t + ((n - 2)/2 + h)*ct(t)";
                         c.W = "lambda*(-kappa) + h^2/t^2 + ((n - 2)^2/4 - h^2)/s(t)^2 + h*gam*D(t)/t^2";
                         c.require_G_nonneg = false;
                         c.homogeneity_degree = -2.0;
                         inst.sharp_constant = lambda * (-kappa);
                         inst.equality_expected = true;
                         inst.model_exact_L = true;
                         return finish(inst);
                     }});

        v.push_back({"akutagawa_kumura", "Akutagawa-Kumura inequality outside a ball",
                     "p = 2 on (R, inf), tau = t - R + 1/((n-1) ct_kappa(R)), G = -1/(2 tau) + (n-1)/2 ct_kappa",
                     {{"kappa", "-1", "curvature < 0"}, {"n", "2", "dimension"}, {"R", "1", "inner radius"}},
                     [](const ParamBinding& given, const std::string&) {
                         ParamReader r(given, {"kappa", "n", "R", "p"});
                         const double kappa = r.get("kappa", -1), R = r.get("R", 1);
                         const int n = r.get_int("n", 2);
                         require(r.get("p", 2) == 2.0, "p = 2");
                         require(kappa < 0.0, "kappa < 0");
                         require(R > 0.0, "R > 0");
                         CatalogInstance inst;
                         inst.name = "akutagawa_kumura";
                         auto& c = inst.config = base_config(kappa, n, 2.0, R, inf);
                         c.params = {{"R", R}, {"a0", 1.0 / ((n - 1.0) * ct(kappa, R))}};
                         c.L = kKindCurvature;
                         c.G = "-1/(2*(t - R + a0)) + (n - 1)/2*ct(t)";
                         c.W = "(n - 1)^2*(-kappa)/4 + 1/(4*(t - R + a0)^2) + (n - 1)*(n - 3)/(4*s(t)^2)";
                         c.require_G_nonneg = false;
                         inst.sharp_constant = (n - 1.0) * (n - 1.0) * (-kappa) / 4.0;
                         inst.equality_expected = true;
                         inst.model_exact_L = true;
                         return finish(inst);
                     }});

        v.push_back({"greene_wu_psi", "Greene-Wu comparison profile",
                     "L = (n-1) psi'/psi, G = -1/(2t) + (n-1)/2 psi'/psi; needs (n-2) psi' + (n-1) t psi'' >= 0",
                     {{"kappa", "0", "curvature (read by ct, s, D inside psi)"}, {"n", "3", "dimension"},
                      {"R", "inf", "upper end; exponentially growing psi needs a finite one"},
                      {"psi", "s(t)", "profile expression (separate option)"}},
                     [](const ParamBinding& given, const std::string& psi_text) {
                         ParamReader r(given, {"kappa", "n", "p", "R"});
                         const double kappa = r.get("kappa", 0), R = r.get("R", inf);
                         const int n = r.get_int("n", 3);
                         require(r.get("p", 2) == 2.0, "p = 2");
                         require(R > 0.0, "R > 0");
                         CatalogInstance inst;
                         inst.name = "greene_wu_psi";
                         auto& c = inst.config = base_config(kappa, n, 2.0, 0.0, R);
                         c.psi = psi_text.empty() ? "s(t)" : psi_text;
                         c.L = kKindPsi;
                         c.G = kKindGreeneWu;
                         c.W = kKindGreeneWu;
                         inst.sharp_constant = 0.25;
                         inst.equality_expected = true;
                         CatalogInstance done = finish(inst);
                         // Sampled admissibility of psi.
                         ParamBinding b{{"kappa", kappa}, {"n", static_cast<double>(n)}, {"p", 2.0}};
                         const ScalarExpr psi = ScalarExpr::parse(c.psi);
                         const RadialFunction f = RadialFunction::from_expr(psi, b);
                         for (double t : certification_grid({0.0, R}, GridPolicy::Log, 512)) {
                             const Jet v = f(t);
                             if (!std::isfinite(v.v) || !std::isfinite(v.d))
                                 throw ParameterError("psi overflows at t = " + format_number(t) +
                                                      "; pass a finite R");
                             require(v.v > 0.0 && v.d > 0.0, "psi > 0 and psi' > 0");
                             const double f2 = psi_second(f, t);
                             const double test = (n - 2.0) * v.d + (n - 1.0) * t * f2;
                             require(test >= -1e-6 * (1.0 + std::fabs((n - 2.0) * v.d) + std::fabs((n - 1.0) * t * f2)),
                                     "(n-2) psi' + (n-1) t psi'' >= 0");
                         }
                         return done;
                     }});

        v.push_back({"ghoussoub_moradifam", "Ghoussoub-Moradifam weights (a + b t^alpha)^beta",
                     "p = 2, w = (a + b t^alpha)^beta / t^(2m), L = (n-1)/t, W = C/t^2, G via 2F1 ratio",
                     {{"kappa", "0", "curvature"}, {"n", "3", "dimension"}, {"a", "1", "a > 0"}, {"b", "1", "b > 0"},
                      {"alpha", "1", "alpha beta > 0"}, {"beta", "1", "beta = 0 gives the Hardy weight"},
                      {"m", "0", "m <= (n-2)/2"}},
                     [](const ParamBinding& given, const std::string&) {
                         ParamReader r(given, {"kappa", "n", "a", "b", "alpha", "beta", "m", "p"});
                         const double kappa = r.get("kappa", 0), a = r.get("a", 1), b = r.get("b", 1),
                                      alpha = r.get("alpha", 1), beta = r.get("beta", 1), m = r.get("m", 0);
                         const int n = r.get_int("n", 3);
                         require(r.get("p", 2) == 2.0, "p = 2");
                         require(a > 0.0 && b > 0.0, "a > 0 and b > 0");
                         require(alpha * beta > 0.0 || beta == 0.0, "alpha beta > 0 (or beta = 0)");
                         require(m <= (n - 2.0) / 2.0, "m <= (n - 2)/2");
                         const double K0 = n - 2.0 * m - 2.0;
                         const double ab = alpha * beta;
                         const double A = beta / 2.0;
                         const double B = beta == 0.0 ? 0.0 : std::sqrt(ab * (ab + 2.0 * K0)) / (2.0 * alpha);
                         CatalogInstance inst;
                         inst.name = "ghoussoub_moradifam";
                         auto& c = inst.config = base_config(kappa, n, 2.0, 0.0, inf);
                         c.params = {{"a", a}, {"b", b}, {"alpha", alpha}, {"beta", beta}, {"m", m},
                                     {"K0", K0}, {"A", A}, {"B", B}, {"C", K0 * K0 / 4.0}};
                         c.w = "(a + b*t^alpha)^beta/t^(2*m)";
                         c.L = "(n - 1)/t";
                         c.G = "K0/(2*t)*(1 - beta*(b*t^alpha/a)*hyp2f1(1 + A - B, 1 + A + B, 2, -(b*t^alpha/a))/"
                               "hyp2f1(A - B, A + B, 1, -(b*t^alpha/a)))";
                         c.W = "C/t^2";
                         const bool region = a > 0 && b > 0 && alpha > 0 && beta > 0 &&
                                             ab + std::sqrt(ab * (ab + 2.0 * K0)) <= 2.0;
                         inst.positivity_proven = region || beta == 0.0;
                         c.require_G_nonneg = inst.positivity_proven || kappa < 0.0;
                         c.homogeneity_degree = -2.0;
                         inst.sharp_constant = K0 * K0 / 4.0;
                         inst.equality_expected = true;
                         inst.model_exact_L = kappa == 0.0;
                         return finish(inst);
                     }});

        v.push_back({"carvalho_cavalcante", "Carvalho-Cavalcante bounds |grad rho| <= a, Delta_p rho >= b",
                     "rho normalised by a: L = b/a^(p-1), G = (b/(p a^(p-1)))^(p-1), W = b^p/(p^p a^(p(p-1)))",
                     {{"kappa", "0", "curvature"}, {"n", "2", "dimension"}, {"p", "2", "exponent"},
                      {"a", "1", "gradient bound > 0"}, {"b", "1", "p-Laplacian floor > 0"}},
                     [](const ParamBinding& given, const std::string&) {
                         ParamReader r(given, {"kappa", "n", "p", "a", "b"});
                         const double kappa = r.get("kappa", 0), p = r.get("p", 2), a = r.get("a", 1),
                                      b = r.get("b", 1);
                         const int n = r.get_int("n", 2);
                         require(a > 0.0 && b > 0.0, "a > 0 and b > 0");
                         const OptimalConstant opt = optimize_constant(a, b, p);
                         CatalogInstance inst;
                         inst.name = "carvalho_cavalcante";
                         auto& c = inst.config = base_config(kappa, n, p, 0.0, std::numeric_limits<double>::infinity());
                         c.params = {{"a", a}, {"b", b}};
                         c.L = "b/a^(p - 1)";
                         c.G = "(b/(p*a^(p - 1)))^(p - 1)";
                         c.W = "b^p/(p^p*a^(p*(p - 1)))";
                         inst.sharp_constant = opt.value;
                         inst.equality_expected = true;
                         return finish(inst);
                     }});
        return v;
    }();
    return entries;
}

}  // namespace detail

[[nodiscard]] inline std::vector<std::string> list_catalog() {
    std::vector<std::string> names;
    for (const auto& e : detail::registry()) names.push_back(e.name);
    return names;
}

[[nodiscard]] inline const CatalogEntry& catalog_entry(const std::string& name) {
    for (const auto& e : detail::registry())
        if (e.name == name) return e;
    throw NotFound("no catalog entry named '" + name + "'");
}

/// Instantiates an entry; psi is only read by greene_wu_psi.
[[nodiscard]] inline CatalogInstance instantiate(const std::string& name, const ParamBinding& params = {},
                                                 const std::string& psi = {}) {
    const CatalogEntry& entry = catalog_entry(name);
    CatalogInstance inst = entry.build(params, psi);
    inst.citation = entry.citation;
    return inst;
}

}  // namespace rpair
