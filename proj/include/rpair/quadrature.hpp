#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "rpair/error.hpp"

namespace rpair {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
    bool converged = true;
};

struct QuadOptions {
    double rel_tol = 1e-12;
    double abs_tol = 0.0;
    int max_subdivisions = 2000;
    /// Interior points where the integrand has kinks or jumps.
    std::vector<double> breakpoints;
    /// Pre-split geometrically towards the lower endpoint (integrable singularities at 0).
    bool graded_lower = false;
};

namespace detail {

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

inline Panel gauss_kronrod15(const std::function<double(double)>& f, double a, double b) {
    static constexpr std::array<double, 8> xk = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static constexpr std::array<double, 8> wk = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr std::array<double, 4> wg = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = wk[7] * fc;
    double gauss = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xk[j];
        const double s = f(c - dx) + f(c + dx);
        kron += wk[j] * s;
        if (j % 2 == 1) gauss += wg[j / 2] * s;
    }
    kron *= h;
    gauss *= h;
    return {a, b, kron, std::fabs(kron - gauss)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod 7-15 quadrature over [a, b] (b may be +inf).
[[nodiscard]] inline QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                                          const QuadOptions& opt = {}) {
    if (!(a <= b)) throw DomainError("integrate: requires a <= b");
    if (std::isinf(b)) {
        // Finite part up to max(1, 2a), then doubling panels until the tail is negligible.
        double cut = std::max(1.0, 2.0 * std::max(a, 0.0));
        for (double bp : opt.breakpoints) cut = std::max(cut, 2.0 * bp);
        QuadResult total = integrate(f, a, cut, opt);
        QuadOptions tail = opt;
        tail.breakpoints.clear();
        tail.graded_lower = false;
        int quiet = 0;
        for (int k = 0; k < 1000 && cut < 1e300; ++k) {
            const QuadResult piece = integrate(f, cut, 2.0 * cut, tail);
            total.value += piece.value;
            total.error += piece.error;
            total.subdivisions += piece.subdivisions;
            total.converged = total.converged && piece.converged;
            cut *= 2.0;
            if (std::fabs(piece.value) <= 1e-17 * std::fabs(total.value) + 1e-300) {
                if (++quiet >= 3) return total;
            } else {
                quiet = 0;
            }
        }
        total.converged = false;
        return total;
    }
    if (a == b) return {};

    std::vector<double> cuts = {a};
    if (opt.graded_lower) {
        const double span = b - a;
        std::vector<double> grade;
        for (int k = 60; k >= 1; --k) grade.push_back(a + span * std::ldexp(1.0, -k));
        cuts.insert(cuts.end(), grade.begin(), grade.end());
    }
    for (double bp : opt.breakpoints)
        if (bp > a && bp < b) cuts.push_back(bp);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<detail::Panel> heap;
    double value = 0.0, error = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const auto p = detail::gauss_kronrod15(f, cuts[i], cuts[i + 1]);
        value += p.value;
        error += p.error;
        heap.push(p);
    }
    int subdivisions = 0;
    while (error > std::max(opt.abs_tol, opt.rel_tol * std::fabs(value))) {
        if (subdivisions >= opt.max_subdivisions) return {value, error, subdivisions, false};
        const detail::Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            heap.push(worst);
            return {value, error, subdivisions, false};
        }
        const auto left = detail::gauss_kronrod15(f, worst.a, mid);
        const auto right = detail::gauss_kronrod15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }
    // Re-sum to shed the drift of the running updates.
    value = 0.0;
    error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    if (!std::isfinite(value)) throw DomainError("integrate: integrand is not finite");
    return {value, error, subdivisions, true};
}

}  // namespace rpair
