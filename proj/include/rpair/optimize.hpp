#pragma once

#include <cmath>
#include <functional>
#include <utility>

namespace rpair {

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
/// Returns (argmax, max).
[[nodiscard]] inline std::pair<double, double> golden_section_maximize(const std::function<double(double)>& f,
                                                                       double lo, double hi,
                                                                       double tol = 1e-12) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 500 && hi - lo > tol * (1.0 + std::fabs(lo) + std::fabs(hi)); ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    const double x = 0.5 * (lo + hi);
    return {x, f(x)};
}

}  // namespace rpair
