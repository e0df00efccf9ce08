#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli_support.hpp"
#include "rpair/rpair.hpp"

using json = nlohmann::ordered_json;
using namespace rpair;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;
constexpr int kExitInconclusive = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw NotFound("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ParameterError("cannot write '" + path + "'");
    out << text;
}

json binding_json(const ParamBinding& b) {
    json j = json::object();
    for (const auto& [k, v] : b) j[k] = v;
    return j;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// ---------------------------------------------------------------- certify

struct CertifyArgs {
    std::string spec_file, catalog, params, psi, grid = "log", out;
    int points = 512;
    double tol = 1e-8;
    bool full = false;
};

int run_certify(const CertifyArgs& a) {
    if (a.spec_file.empty() == a.catalog.empty())
        throw ParameterError("certify needs exactly one of --spec and --catalog");
    RiccatiPairSpec spec;
    RadialFunction G;
    std::string source;
    if (!a.catalog.empty()) {
        CatalogInstance inst = instantiate(a.catalog, cli::parse_params(a.params), a.psi);
        spec = inst.spec;
        G = inst.G;
        source = inst.name;
    } else {
        if (!a.params.empty()) throw ParameterError("--params applies to --catalog; put values in [params]");
        BuiltSpec built = build_spec(parse_config(read_file(a.spec_file)));
        spec = built.spec;
        G = built.G;
        source = a.spec_file;
    }
    CertifyOptions opt;
    opt.tol = a.tol;
    opt.points = a.points;
    if (a.grid == "log") opt.grid = GridPolicy::Log;
    else if (a.grid == "uniform") opt.grid = GridPolicy::Uniform;
    else throw ParameterError("--grid must be log or uniform");
    const CertificationReport rep = certify(spec, G, opt);

    std::printf("%s: %s (%zu points, tol %s)\n", source.c_str(), verdict_name(rep.verdict), rep.grid.size(),
                format_short(rep.tolerance_used).c_str());
    std::printf("  min residual %s, max |residual| %s, min G %s\n", format_short(rep.min_residual).c_str(),
                format_short(rep.max_abs_residual).c_str(), format_short(rep.min_G).c_str());
    if (rep.witness_t) std::printf("  witness t = %s: %s\n", format_short(*rep.witness_t).c_str(), rep.reason.c_str());

    if (!a.out.empty()) {
        json j;
        j["source"] = source;
        j["verdict"] = verdict_name(rep.verdict);
        j["tolerance"] = rep.tolerance_used;
        j["grid_points"] = rep.grid.size();
        j["min_residual"] = number_or_null(rep.min_residual);
        j["max_abs_residual"] = number_or_null(rep.max_abs_residual);
        j["min_G"] = number_or_null(rep.min_G);
        j["witness_t"] = rep.witness_t ? json(*rep.witness_t) : json(nullptr);
        j["reason"] = rep.reason;
        if (a.full) {
            j["grid"] = rep.grid;
            j["residuals"] = rep.residuals;
            j["G"] = rep.G;
        }
        write_text(a.out, j.dump(2) + "\n");
    }
    switch (rep.verdict) {
        case Verdict::Certified: return kExitOk;
        case Verdict::Failed: return kExitFailed;
        default: return kExitInconclusive;
    }
}

// ---------------------------------------------------------- solve-riccati

struct SolveArgs {
    std::string spec_file, direction = "forward", out;
    double t0 = 1.0, G0 = 0.0, t_end = 10.0;
    int samples = 50;
};

int run_solve(const SolveArgs& a) {
    const BuiltSpec built = build_spec(parse_config(read_file(a.spec_file), false));
    const Direction dir = a.direction == "forward"    ? Direction::Forward
                          : a.direction == "backward" ? Direction::Backward
                                                      : throw ParameterError("--direction must be forward or backward");
    if (a.samples < 2) throw ParameterError("--samples must be >= 2");
    if ((dir == Direction::Forward) != (a.t_end > a.t0)) throw ParameterError("--t-end lies on the wrong side of --t0");
    std::vector<double> ts;
    const bool geometric = a.t0 > 0.0 && a.t_end > 0.0;
    for (int i = 0; i < a.samples; ++i) {
        const double f = static_cast<double>(i) / (a.samples - 1);
        ts.push_back(geometric ? a.t0 * std::pow(a.t_end / a.t0, f) : a.t0 + (a.t_end - a.t0) * f);
    }
    const OdeSolution sol = solve_ivp(built.spec, a.t0, a.G0, dir, ts);
    std::ostringstream csv;
    csv << "t,G\n";
    for (std::size_t i = 0; i < sol.t.size(); ++i) csv << format_full(sol.t[i]) << "," << format_full(sol.y[i]) << "\n";
    write_text(a.out, csv.str());
    switch (sol.status) {
        case OdeStatus::Completed:
            std::fprintf(stderr, "completed at t = %s\n", format_short(sol.t_stop).c_str());
            return kExitOk;
        case OdeStatus::BlowUp:
            std::fprintf(stderr, "blow-up near t = %s: %s\n", format_short(sol.t_stop).c_str(), sol.message.c_str());
            return kExitFailed;
        default:
            std::fprintf(stderr, "stopped at t = %s: %s\n", format_short(sol.t_stop).c_str(), sol.message.c_str());
            return kExitInconclusive;
    }
}

// ----------------------------------------------------------- verify/sweep

struct VerifyArgs {
    std::string inequality, params, family, out, G, H, w = "1", form = "multiplicative", psi, u;
    double sharp = 1.0;
};

struct VerifyRun {
    SweepReport report;
    ParamBinding params;
};

VerifyRun run_verification(const VerifyArgs& a) {
    if (a.family.empty()) throw ParameterError("--family is required");
    ParamBinding params = cli::parse_params(a.params);
    auto take = [&](const std::string& key, double fallback) {
        const auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    auto allow = [&](std::vector<std::string> keys) {
        for (const auto& [k, v] : params)
            if (std::find(keys.begin(), keys.end(), k) == keys.end())
                throw ParameterError("unknown parameter '" + k + "' for " + a.inequality);
    };
    const std::string& ineq = a.inequality;
    if (ineq == "up" || ineq == "ckn" || ineq == "sc" || ineq == "generic") {
        const ModelGeometry g = make_geometry(take("kappa", ineq == "sc" ? -1.0 : 0.0),
                                              static_cast<int>(take("n", 3)), take("p", 2.0));
        const TestFamily fam = cli::parse_family(a.family, g, a.u, params);
        if (ineq == "up") {
            allow({"kappa", "n", "p", "alpha"});
            const double alpha = take("alpha", 1.0);
            return {sharpness_sweep(up_setup(g, alpha), (g.n + alpha - 1.0) / g.p, fam), params};
        }
        if (ineq == "ckn") {
            allow({"kappa", "n", "p", "alpha", "r"});
            const double alpha = take("alpha", 1.0), r = take("r", 3.0);
            return {sharpness_sweep(ckn_setup(g, alpha, r), (g.n + alpha - 1.0) / r, fam), params};
        }
        if (ineq == "sc") {
            allow({"kappa", "n", "p", "c"});
            return {sharpness_sweep(sc_setup(g, take("c", 0.0)), a.sharp, fam), params};
        }
        if (a.G.empty() || a.H.empty()) throw ParameterError("generic needs --G and --H");
        const InequalitySetup S = generic_setup(g, ScalarExpr::parse(a.G), ScalarExpr::parse(a.H, "s"), params,
                                                ScalarExpr::parse(a.w));
        if (a.form == "multiplicative") return {sharpness_sweep(S, a.sharp, fam), params};
        if (a.form != "additive") throw ParameterError("--form must be additive or multiplicative");
        SweepReport rep;
        rep.inequality = "generic";
        rep.sharp_constant = a.sharp;
        for (const auto& [param, u] : fam) {
            SweepMember m;
            m.family_param = param;
            m.label = u.label();
            try {
                m.margin = additive_margin(S, u);
                m.ratio = m.margin.lhs / m.margin.rhs;
            } catch (const Error& ex) {
                m.skipped = true;
                m.note = ex.what();
            }
            if (!m.skipped) {
                rep.min_margin = std::min(rep.min_margin, m.margin.margin);
                rep.ratio_min = std::min(rep.ratio_min, m.ratio);
                rep.ratio_max = std::max(rep.ratio_max, m.ratio);
                rep.any_violated = rep.any_violated || m.margin.violated;
                rep.young_consistent = rep.young_consistent && m.margin.young_consistent;
            }
            rep.members.push_back(m);
        }
        return {rep, params};
    }
    const CatalogInstance inst = instantiate(ineq, params, a.psi);
    const TestFamily fam = cli::parse_family(a.family, inst.spec.geo, a.u, params);
    return {sharpness_sweep(inst, fam), params};
}

json sweep_json(const VerifyRun& run) {
    const SweepReport& r = run.report;
    json j;
    j["inequality"] = r.inequality;
    j["params"] = binding_json(run.params);
    json members = json::array();
    for (const auto& m : r.members) {
        json e;
        e["family_param"] = m.family_param;
        e["label"] = m.label;
        if (m.skipped) {
            e["skipped"] = true;
            e["note"] = m.note;
        } else {
            e["lhs"] = m.margin.lhs;
            e["rhs"] = m.margin.rhs;
            e["margin"] = m.margin.margin;
            e["quad_error"] = m.margin.quad_error;
            e["ratio"] = m.ratio;
            e["violated"] = m.margin.violated;
            e["I"] = m.margin.I ? json(*m.margin.I) : json(nullptr);
            e["J"] = m.margin.J ? json(*m.margin.J) : json(nullptr);
        }
        members.push_back(e);
    }
    j["members"] = members;
    json s;
    s["min_margin"] = number_or_null(r.min_margin);
    s["achieved_ratio_extremum"] = number_or_null(r.ratio_min);
    s["achieved_ratio_max"] = number_or_null(r.ratio_max);
    s["sharp_constant"] = r.sharp_constant;
    s["any_violated"] = r.any_violated;
    s["young_consistent"] = r.young_consistent;
    j["summary"] = s;
    return j;
}

int verdict_of(const SweepReport& r) {
    if (r.any_violated || !r.young_consistent) return kExitFailed;
    for (const auto& m : r.members)
        if (!m.skipped) return kExitOk;
    return kExitInconclusive;
}

int run_verify(const VerifyArgs& a) {
    const VerifyRun run = run_verification(a);
    const SweepReport& r = run.report;
    std::printf("%s: %zu members, min margin %s, ratio in [%s, %s], sharp constant %s%s\n", r.inequality.c_str(),
                r.members.size(), format_short(r.min_margin).c_str(), format_short(r.ratio_min).c_str(),
                format_short(r.ratio_max).c_str(), format_short(r.sharp_constant).c_str(),
                r.any_violated ? ", VIOLATED" : "");
    if (!a.out.empty()) write_text(a.out, sweep_json(run).dump(2) + "\n");
    return verdict_of(r);
}

int run_sweep(const VerifyArgs& a) {
    const VerifyRun run = run_verification(a);
    const SweepReport& r = run.report;
    std::ostringstream csv;
    csv << "family_param,ratio,margin,quad_error,note\n";
    for (const auto& m : r.members) {
        csv << format_full(m.family_param) << ",";
        if (m.skipped) csv << ",,,\"" << m.note << "\"\n";
        else
            csv << format_full(m.ratio) << "," << format_full(m.margin.margin) << "," << format_full(m.margin.quad_error)
                << ",\n";
    }
    write_text(a.out, csv.str());
    std::fprintf(stderr, "%s: inf ratio %s, sup ratio %s, sharp constant %s\n", r.inequality.c_str(),
                 format_short(r.ratio_min).c_str(), format_short(r.ratio_max).c_str(),
                 format_short(r.sharp_constant).c_str());
    return verdict_of(r);
}

// ------------------------------------------------------------- spectrum

struct SpectrumArgs {
    double kappa = 0.0, R = 1.0;
    int n = 2, N = 2000;
    std::string out, eigenfunction;
};

int run_spectrum(const SpectrumArgs& a) {
    const SpectralResult r = spectral_lambda1(make_geometry(a.kappa, a.n, 2.0), a.R, a.N);
    std::printf("lambda1 = %s (N = %d: %s, 2N: %s, error estimate %s)\n", format_short(r.lambda1).c_str(), a.N,
                format_short(r.lambda_N).c_str(), format_short(r.lambda_2N).c_str(),
                format_short(r.error_estimate).c_str());
    if (!a.out.empty()) {
        json j;
        j["kappa"] = a.kappa;
        j["n"] = a.n;
        j["R"] = a.R;
        j["N"] = a.N;
        j["lambda1"] = r.lambda1;
        j["lambda_N"] = r.lambda_N;
        j["lambda_2N"] = r.lambda_2N;
        j["error_estimate"] = r.error_estimate;
        write_text(a.out, j.dump(2) + "\n");
    }
    if (!a.eigenfunction.empty()) {
        std::ostringstream csv;
        csv << "t,v\n";
        for (std::size_t i = 0; i < r.t.size(); ++i) csv << format_full(r.t[i]) << "," << format_full(r.v[i]) << "\n";
        write_text(a.eigenfunction, csv.str());
    }
    return kExitOk;
}

// --------------------------------------------------------- gm-positivity

int run_gm(const std::string& out, int samples) {
    std::vector<GmPoint> grid = gm_parameter_grid();
    std::ostringstream csv;
    csv << "a,b,alpha,beta,m,n,min_G,argmin_t,in_thm422_region\n";
    int region_failures = 0, outside_failures = 0;
    for (auto& pt : grid) {
        gm_scan(pt, samples);
        if (!(pt.min_G > 0.0)) (pt.in_region ? region_failures : outside_failures)++;
        csv << format_full(pt.a) << "," << format_full(pt.b) << "," << format_full(pt.alpha) << ","
            << format_full(pt.beta) << "," << format_full(pt.m) << "," << pt.n << "," << format_full(pt.min_G) << ","
            << format_full(pt.argmin_t) << "," << (pt.in_region ? "true" : "false") << "\n";
    }
    write_text(out, csv.str());
    std::fprintf(stderr, "%zu parameter points: %d non-positive inside the proven region, %d outside\n", grid.size(),
                 region_failures, outside_failures);
    return region_failures > 0 ? kExitFailed : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Riccati-pair certification and verification toolkit"};
    app.require_subcommand(1);
    int code = kExitOk;

    CertifyArgs ca;
    auto* certify_cmd = app.add_subcommand("certify", "certify a Riccati pair on a sampled grid");
    certify_cmd->add_option("--spec", ca.spec_file, "config file");
    certify_cmd->add_option("--catalog", ca.catalog, "catalog entry name");
    certify_cmd->add_option("--params", ca.params, "k=v,... for --catalog");
    certify_cmd->add_option("--psi", ca.psi, "profile for greene_wu_psi");
    certify_cmd->add_option("--grid", ca.grid, "log or uniform");
    certify_cmd->add_option("--points", ca.points, "grid size (>= 512)");
    certify_cmd->add_option("--tol", ca.tol, "residual tolerance");
    certify_cmd->add_option("--out", ca.out, "JSON report path");
    certify_cmd->add_flag("--full", ca.full, "include per-point residuals in the report");

    SolveArgs sa;
    auto* solve_cmd = app.add_subcommand("solve-riccati", "integrate the Riccati equation from an initial value");
    solve_cmd->add_option("--spec", sa.spec_file, "config file (G optional)")->required();
    solve_cmd->add_option("--t0", sa.t0, "initial abscissa");
    solve_cmd->add_option("--G0", sa.G0, "initial value");
    solve_cmd->add_option("--t-end", sa.t_end, "final abscissa");
    solve_cmd->add_option("--direction", sa.direction, "forward or backward");
    solve_cmd->add_option("--samples", sa.samples, "number of output points");
    solve_cmd->add_option("--out", sa.out, "CSV path (default stdout)");

    VerifyArgs va;
    auto add_verify_options = [&va](CLI::App* cmd) {
        cmd->add_option("--inequality", va.inequality, "catalog name, up, ckn, sc or generic")->required();
        cmd->add_option("--params", va.params, "k=v,...");
        cmd->add_option("--family", va.family, "kind:key=v1/v2;...")->required();
        cmd->add_option("--out", va.out, "report path");
        cmd->add_option("--G", va.G, "generic: G(t)");
        cmd->add_option("--H", va.H, "generic: H(s)");
        cmd->add_option("--w", va.w, "generic: weight w(t)");
        cmd->add_option("--form", va.form, "generic: additive or multiplicative");
        cmd->add_option("--sharp", va.sharp, "constant used to scale achieved ratios (generic, sc)");
        cmd->add_option("--psi", va.psi, "profile for greene_wu_psi");
        cmd->add_option("--u", va.u, "profile expression for the dsl family");
    };
    auto* verify_cmd = app.add_subcommand("verify", "evaluate an inequality on a family of test functions (JSON)");
    add_verify_options(verify_cmd);
    auto* sweep_cmd = app.add_subcommand("sweep", "tabulate achieved ratios over a family (CSV)");
    add_verify_options(sweep_cmd);

    SpectrumArgs pa;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "first Dirichlet eigenvalue of a model ball");
    spectrum_cmd->add_option("--kappa", pa.kappa, "curvature <= 0");
    spectrum_cmd->add_option("--n", pa.n, "dimension");
    spectrum_cmd->add_option("--R", pa.R, "ball radius");
    spectrum_cmd->add_option("--N", pa.N, "grid size (>= 200)");
    spectrum_cmd->add_option("--out", pa.out, "JSON report path");
    spectrum_cmd->add_option("--eigenfunction", pa.eigenfunction, "CSV path for the eigenfunction");

    double nu = 0.0;
    int count = 5;
    auto* zeros_cmd = app.add_subcommand("bessel-zeros", "positive zeros of J_nu");
    zeros_cmd->add_option("--nu", nu, "order in [0, 50]");
    zeros_cmd->add_option("--count", count, "number of zeros (<= 20)");

    auto* catalog_cmd = app.add_subcommand("catalog", "list or expand catalog entries");
    catalog_cmd->require_subcommand(1);
    auto* list_cmd = catalog_cmd->add_subcommand("list", "entry names with citations");
    std::string show_name, show_params, show_psi;
    auto* show_cmd = catalog_cmd->add_subcommand("show", "emit an entry as a config file");
    show_cmd->add_option("name", show_name, "entry name")->required();
    show_cmd->add_option("--params", show_params, "k=v,...");
    show_cmd->add_option("--psi", show_psi, "profile for greene_wu_psi");

    std::string gm_out;
    int gm_samples = 400;
    auto* gm_cmd = app.add_subcommand("gm-positivity", "sign study of the Ghoussoub-Moradifam G (CSV)");
    gm_cmd->add_option("--out", gm_out, "CSV path (default stdout)");
    gm_cmd->add_option("--samples", gm_samples, "log-spaced t samples on [1e-4, 1e4]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (certify_cmd->parsed()) code = run_certify(ca);
        else if (solve_cmd->parsed()) code = run_solve(sa);
        else if (verify_cmd->parsed()) code = run_verify(va);
        else if (sweep_cmd->parsed()) code = run_sweep(va);
        else if (spectrum_cmd->parsed()) code = run_spectrum(pa);
        else if (zeros_cmd->parsed()) {
            for (int k = 1; k <= count; ++k) std::printf("%d %.15g\n", k, bessel_zero(nu, k));
        } else if (catalog_cmd->parsed()) {
            if (list_cmd->parsed()) {
                for (const auto& name : list_catalog()) {
                    const CatalogEntry& e = catalog_entry(name);
                    std::printf("%-22s %s\n", name.c_str(), e.citation.c_str());
                    for (const auto& p : e.params)
                        std::printf("    %-8s default %-10s %s\n", p.name.c_str(), p.default_text.c_str(),
                                    p.meaning.c_str());
                }
            } else {
                const CatalogInstance inst = instantiate(show_name, cli::parse_params(show_params), show_psi);
                std::printf("# %s\n%s", inst.citation.c_str(), emit_config(inst.config).c_str());
            }
        } else if (gm_cmd->parsed()) {
            code = run_gm(gm_out, gm_samples);
        }
    } catch (const NotFound& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const ParameterError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const UnboundParameter& e) {
        std::fprintf(stderr, "error: unbound parameter '%s'\n", e.name().c_str());
        return kExitUsage;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInconclusive;
    }
    return code;
}
