#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "rpair/error.hpp"
#include "rpair/expr.hpp"

namespace rpair {

/// Text form of a Riccati-pair problem.
///
///     [geometry]   kappa, n, p
///     [interval]   lo, hi        (hi may be "inf")
///     [functions]  w, L, W, G, psi, rho_laplacian
///     [params]     name = value  (bound into every expression)
///     [options]    require_G_nonneg, homogeneity_degree, entry
///
/// L may be kind:constant_curvature, kind:constant_floor or kind:psi; G and W may be
/// kind:greene_wu. Everything else in [functions] is an expression in t.
struct SpecConfig {
    double kappa = 0.0;
    int n = 2;
    double p = 2.0;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    std::string w = "1";
    std::string L;
    std::string W;
    std::string G;
    std::string psi;
    std::string rho_laplacian;
    ParamBinding params;
    std::optional<bool> require_G_nonneg;
    std::optional<double> homogeneity_degree;
    std::string entry;
};

/// %.17g, or "inf".
[[nodiscard]] inline std::string format_full(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// %.6g for human-readable summaries.
[[nodiscard]] inline std::string format_short(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline double parse_real(const std::string& text, int line, int column, bool allow_inf) {
    if (allow_inf && text == "inf") return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty() || !std::isfinite(v))
        throw ParseError("expected a number, got '" + text + "'", line, column);
    return v;
}

}  // namespace detail

/// G may be omitted when the caller only integrates the Riccati equation.
[[nodiscard]] inline SpecConfig parse_config(std::string_view text, bool require_G = true) {
    SpecConfig cfg;
    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string body = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']') throw ParseError("unterminated section header", line, 1);
            section = detail::trim(std::string_view(body).substr(1, body.size() - 2));
            if (section != "geometry" && section != "interval" && section != "functions" && section != "params" &&
                section != "options")
                throw ParseError("unknown section [" + section + "]", line, 1);
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", line, 1);
        const std::string key = detail::trim(std::string_view(body).substr(0, eq));
        const std::string value = detail::trim(std::string_view(body).substr(eq + 1));
        const int vcol = static_cast<int>(raw.find(value.empty() ? "=" : value) + 1);
        if (key.empty()) throw ParseError("empty key", line, 1);
        auto unknown = [&] { throw ParseError("unknown key '" + key + "' in [" + section + "]", line, 1); };
        if (section == "geometry") {
            if (key == "kappa") cfg.kappa = detail::parse_real(value, line, vcol, false);
            else if (key == "p") cfg.p = detail::parse_real(value, line, vcol, false);
            else if (key == "n") {
                const double n = detail::parse_real(value, line, vcol, false);
                if (n != std::floor(n)) throw ParseError("n must be an integer", line, vcol);
                cfg.n = static_cast<int>(n);
            } else unknown();
        } else if (section == "interval") {
            if (key == "lo") cfg.lo = detail::parse_real(value, line, vcol, false);
            else if (key == "hi") cfg.hi = detail::parse_real(value, line, vcol, true);
            else unknown();
        } else if (section == "functions") {
            if (key == "w") cfg.w = value;
            else if (key == "L") cfg.L = value;
            else if (key == "W") cfg.W = value;
            else if (key == "G") cfg.G = value;
            else if (key == "psi") cfg.psi = value;
            else if (key == "rho_laplacian") cfg.rho_laplacian = value;
            else unknown();
        } else if (section == "params") {
            cfg.params[key] = detail::parse_real(value, line, vcol, false);
        } else if (section == "options") {
            if (key == "require_G_nonneg") {
                if (value != "true" && value != "false") throw ParseError("expected true or false", line, vcol);
                cfg.require_G_nonneg = value == "true";
            } else if (key == "homogeneity_degree") {
                cfg.homogeneity_degree = detail::parse_real(value, line, vcol, false);
            } else if (key == "entry") {
                cfg.entry = value;
            } else unknown();
        } else {
            throw ParseError("key outside of any section", line, 1);
        }
    }
    if (cfg.L.empty() || cfg.W.empty()) throw ParseError("[functions] must define L and W", line, 1);
    if (require_G && cfg.G.empty()) throw ParseError("[functions] must define G", line, 1);
    return cfg;
}

[[nodiscard]] inline std::string emit_config(const SpecConfig& cfg) {
    std::ostringstream out;
    if (!cfg.entry.empty()) out << "# catalog entry " << cfg.entry << "\n";
    out << "[geometry]\n";
    out << "kappa = " << format_full(cfg.kappa) << "\n";
    out << "n = " << cfg.n << "\n";
    out << "p = " << format_full(cfg.p) << "\n\n";
    out << "[interval]\n";
    out << "lo = " << format_full(cfg.lo) << "\n";
    out << "hi = " << format_full(cfg.hi) << "\n\n";
    out << "[functions]\n";
    out << "w = " << cfg.w << "\n";
    out << "L = " << cfg.L << "\n";
    out << "W = " << cfg.W << "\n";
    if (!cfg.G.empty()) out << "G = " << cfg.G << "\n";
    if (!cfg.psi.empty()) out << "psi = " << cfg.psi << "\n";
    if (!cfg.rho_laplacian.empty()) out << "rho_laplacian = " << cfg.rho_laplacian << "\n";
    if (!cfg.params.empty()) {
        out << "\n[params]\n";
        for (const auto& [k, v] : cfg.params) out << k << " = " << format_full(v) << "\n";
    }
    if (cfg.require_G_nonneg || cfg.homogeneity_degree || !cfg.entry.empty()) {
        out << "\n[options]\n";
        if (cfg.require_G_nonneg) out << "require_G_nonneg = " << (*cfg.require_G_nonneg ? "true" : "false") << "\n";
        if (cfg.homogeneity_degree) out << "homogeneity_degree = " << format_full(*cfg.homogeneity_degree) << "\n";
        if (!cfg.entry.empty()) out << "entry = " << cfg.entry << "\n";
    }
    return out.str();
}

}  // namespace rpair
