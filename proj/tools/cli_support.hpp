#pragma once

// Parsing helpers shared by the command-line tool and its tests.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "rpair/rpair.hpp"

namespace rpair::cli {

inline double parse_number(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (text.empty() || used != text.size()) throw ParameterError(what + ": expected a number, got '" + text + "'");
    return v;
}

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

/// "k=v,k2=v2" -> binding.
inline ParamBinding parse_params(const std::string& text) {
    ParamBinding out;
    if (text.empty()) return out;
    for (const auto& item : split(text, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw ParameterError("--params: expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        out[key] = parse_number(item.substr(eq + 1), "--params " + key);
    }
    return out;
}

/// Family spec "kind:key=v1/v2/...;key2=..."; lists are zipped and single values broadcast.
/// Kinds: bump(center, width, lambda), random_bumps(count, seed, lo, hi), power_cutoff(eps, r0, R),
/// power_cutoff_standard(count, R), gaussian(alpha, lambda), talenti(alpha, r, lambda), dsl(R, lambda)
/// with the profile taken from `dsl_expr`.
inline TestFamily parse_family(const std::string& text, const ModelGeometry& g, const std::string& dsl_expr = {},
                               const ParamBinding& dsl_binding = {}) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    std::map<std::string, std::vector<double>> keys;
    std::string driver;
    std::size_t members = 1;
    if (colon != std::string::npos && colon + 1 < text.size()) {
        for (const auto& item : split(text.substr(colon + 1), ';')) {
            if (item.empty()) continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw ParameterError("--family: expected key=values, got '" + item + "'");
            const std::string key = item.substr(0, eq);
            std::vector<double> values;
            for (const auto& v : split(item.substr(eq + 1), '/')) values.push_back(parse_number(v, "--family " + key));
            if (values.size() > 1) {
                if (members > 1 && values.size() != members)
                    throw ParameterError("--family: value lists must have equal lengths");
                if (driver.empty()) driver = key;
                members = values.size();
            }
            keys[key] = values;
        }
    }
    auto get = [&](const std::string& key, std::size_t i, double fallback) {
        const auto it = keys.find(key);
        if (it == keys.end()) return fallback;
        return it->second.size() == 1 ? it->second[0] : it->second[i];
    };
    auto check_keys = [&](std::vector<std::string> allowed) {
        for (const auto& [k, v] : keys)
            if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
                throw ParameterError("--family " + kind + ": unknown key '" + k + "'");
    };

    TestFamily fam;
    auto param_of = [&](std::size_t i) { return driver.empty() ? static_cast<double>(i) : keys[driver][i]; };
    if (kind == "power_cutoff_standard") {
        check_keys({"count", "R"});
        return power_cutoff_family(g.n, g.p, static_cast<int>(get("count", 0, 15)), get("R", 0, 1.0));
    }
    if (kind == "random_bumps") {
        check_keys({"count", "seed", "lo", "hi"});
        const int count = static_cast<int>(get("count", 0, 50));
        const double lo = get("lo", 0, 0.0), hi = get("hi", 0, 1.0);
        if (!(hi > lo) || lo < 0.0) throw ParameterError("--family random_bumps: need 0 <= lo < hi");
        std::mt19937_64 rng(static_cast<std::uint64_t>(get("seed", 0, 1)));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int i = 0; i < count; ++i) {
            const double a = lo + (hi - lo) * unit(rng), b = lo + (hi - lo) * unit(rng);
            const double left = std::min(a, b), right = std::max(a, b);
            if (right - left < 1e-3 * (hi - lo)) {
                --i;
                continue;
            }
            fam.emplace_back(i, compact_bump(0.5 * (left + right), 0.5 * (right - left)));
        }
        return fam;
    }
    for (std::size_t i = 0; i < members; ++i) {
        RadialTestFunction u;
        if (kind == "bump") {
            check_keys({"center", "width", "lambda"});
            u = compact_bump(get("center", i, 1.0), get("width", i, 0.5));
        } else if (kind == "power_cutoff") {
            check_keys({"eps", "r0", "R", "lambda"});
            u = power_cutoff(g.n, g.p, get("eps", i, 0.1), get("r0", i, 1e-4), get("R", i, 1.0));
        } else if (kind == "gaussian") {
            check_keys({"alpha", "lambda"});
            u = gaussian_type(get("alpha", i, 1.0), g.p);
        } else if (kind == "talenti") {
            check_keys({"alpha", "r", "lambda"});
            u = talenti(get("alpha", i, 1.0), g.p, get("r", i, 3.0));
        } else if (kind == "dsl") {
            check_keys({"R", "lambda"});
            if (dsl_expr.empty()) throw ParameterError("--family dsl needs --u <expression>");
            ParamBinding b = dsl_binding;
            b["kappa"] = g.kappa;
            b["n"] = g.n;
            b["p"] = g.p;
            u = dsl_test_function(ScalarExpr::parse(dsl_expr), b, get("R", i, 1.0));
        } else {
            throw ParameterError("--family: unknown kind '" + kind + "'");
        }
        const double lambda = get("lambda", i, 1.0);
        fam.emplace_back(param_of(i), lambda == 1.0 ? u : u.scaled(lambda));
    }
    return fam;
}

}  // namespace rpair::cli
