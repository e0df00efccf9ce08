#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rpair/expr.hpp"
#include "rpair/jet.hpp"

namespace rpair_test {

// Random expression text over the differentiable builtins. Domain failures are filtered by the caller.
class ExprGenerator {
public:
    explicit ExprGenerator(std::uint64_t seed) : rng_(seed) {}

    std::string make(int depth) {
        if (depth == 0 || pick(4) == 0) return leaf();
        switch (pick(13)) {
            case 0: return "(" + make(depth - 1) + " + " + make(depth - 1) + ")";
            case 1: return "(" + make(depth - 1) + " - " + make(depth - 1) + ")";
            case 2: return "(" + make(depth - 1) + " * " + make(depth - 1) + ")";
            case 3: return "(" + make(depth - 1) + " / " + make(depth - 1) + ")";
            case 4: {
                static const char* exps[] = {"2", "3", "0.5", "1.5", "-1", "t"};
                return "(" + make(depth - 1) + ")^" + exps[pick(6)];
            }
            case 5: return "exp(" + make(depth - 1) + ")";
            case 6: return "log(" + make(depth - 1) + ")";
            case 7: return "sinh(" + make(depth - 1) + ")";
            case 8: return "cosh(" + make(depth - 1) + ")";
            case 9: return "coth(" + make(depth - 1) + ")";
            case 10: return "sqrt(" + make(depth - 1) + ")";
            case 11: return "ct(" + make(depth - 1) + ")";
            default: return "s(" + make(depth - 1) + ")";
        }
    }

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

private:
    int pick(int k) { return std::uniform_int_distribution<int>(0, k - 1)(rng_); }

    std::string leaf() {
        switch (pick(4)) {
            case 0: return rpair::format_number(std::round(uniform(0.1, 3.0) * 100) / 100);
            case 1: return "c";
            default: return "t";
        }
    }

    std::mt19937_64 rng_;
};

struct DerivativeSweep {
    int accepted = 0;
    int attempts = 0;
    std::vector<std::string> failures;
};

// eval_d against a fourth-order central difference (h = 1e-4) on `count` random expressions at
// random interior points, failing when |d - fd| > 1e-6 (1 + |d|).
inline DerivativeSweep derivative_sweep(std::uint64_t seed, int count) {
    using namespace rpair;
    ExprGenerator gen(seed);
    DerivativeSweep out;
    while (out.accepted < count && out.attempts < 200000) {
        ++out.attempts;
        const ScalarExpr e = parse(gen.make(3));
        ParamBinding b{{"kappa", gen.uniform(0, 1) < 0.5 ? 0.0 : -1.0}, {"n", 3.0}, {"p", 2.0}};
        b["c"] = gen.uniform(0.2, 2.0);
        const double t = gen.uniform(0.3, 2.5);
        Jet exact;
        double fd = 0.0, coarse = 0.0;
        try {
            exact = e.eval_d(t, b);
            const double h = 1e-4;
            fd = (8 * (e.eval(t + h, b) - e.eval(t - h, b)) - (e.eval(t + 2 * h, b) - e.eval(t - 2 * h, b))) / (12 * h);
            coarse = (e.eval(t + 2e-3, b) - e.eval(t - 2e-3, b)) / 4e-3;
        } catch (const Error&) {
            continue;  // outside some builtin's domain near t
        }
        // Interior points only: skip near-singular samples where the stencils lose meaning.
        if (!std::isfinite(exact.v) || !std::isfinite(exact.d) || std::fabs(exact.v) > 1e4 ||
            std::fabs(exact.d) > 1e4)
            continue;
        if (std::fabs(coarse - fd) > 1e-2 * (1 + std::fabs(fd))) continue;  // a singularity within 4e-3 of t
        ++out.accepted;
        if (std::fabs(exact.d - fd) > 1e-6 * (1 + std::fabs(exact.d)))
            out.failures.push_back(e.print() + " at t=" + format_number(t) + ": " + format_number(exact.d) + " vs " +
                                   format_number(fd));
    }
    return out;
}

}  // namespace rpair_test
