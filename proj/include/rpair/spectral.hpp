#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "rpair/error.hpp"
#include "rpair/geometry.hpp"

namespace rpair {

struct SpectralResult {
    /// Richardson extrapolation of the N and 2N values.
    double lambda1 = 0.0;
    double lambda_N = 0.0;
    double lambda_2N = 0.0;
    /// |lambda_N - lambda_2N| / 3, the extrapolation's error model.
    double error_estimate = 0.0;
    /// Eigenfunction on the 2N grid, normalised to v(t_0) = 1.
    std::vector<double> t;
    std::vector<double> v;
    int iterations = 0;
};

namespace detail {

struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;  // off[i] couples i and i + 1
};

// Symmetrised finite differences for -(s^{n-1} v')' / s^{n-1} on t_i = (i + 1/2) h, h = R/(N + 1/2),
// with v = 0 at t_N = R. The flux weight s^{n-1}(0) = 0 makes t = 0 a natural boundary.
inline Tridiagonal dirichlet_laplacian(const ModelGeometry& g, double R, int N, std::vector<double>* nodes) {
    const double h = R / (N + 0.5);
    std::vector<double> mass(N), flux(N + 1);
    for (int i = 0; i < N; ++i) mass[i] = volume_density(g, (i + 0.5) * h);
    for (int i = 0; i <= N; ++i) flux[i] = i == 0 ? 0.0 : volume_density(g, i * h);  // at t_{i - 1/2}
    Tridiagonal T;
    T.diag.resize(N);
    T.off.resize(N - 1);
    const double h2 = h * h;
    for (int i = 0; i < N; ++i) T.diag[i] = (flux[i] + flux[i + 1]) / (h2 * mass[i]);
    for (int i = 0; i + 1 < N; ++i) T.off[i] = -flux[i + 1] / (h2 * std::sqrt(mass[i] * mass[i + 1]));
    if (nodes) {
        nodes->resize(N);
        for (int i = 0; i < N; ++i) (*nodes)[i] = (i + 0.5) * h;
    }
    return T;
}

// Solves (T - sigma) x = b by the Thomas algorithm.
inline std::vector<double> shifted_solve(const Tridiagonal& T, double sigma, std::vector<double> b) {
    const std::size_t N = T.diag.size();
    std::vector<double> c(N), d(N);
    double denom = T.diag[0] - sigma;
    if (denom == 0.0) denom = 1e-300;
    c[0] = N > 1 ? T.off[0] / denom : 0.0;
    d[0] = b[0] / denom;
    for (std::size_t i = 1; i < N; ++i) {
        denom = T.diag[i] - sigma - T.off[i - 1] * c[i - 1];
        if (denom == 0.0) denom = 1e-300;
        c[i] = i + 1 < N ? T.off[i] / denom : 0.0;
        d[i] = (b[i] - T.off[i - 1] * d[i - 1]) / denom;
    }
    for (std::size_t i = N - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
    return d;
}

// Number of eigenvalues below sigma (Sturm sequence of the LDL^T pivots).
inline int sturm_count(const Tridiagonal& T, double sigma) {
    int count = 0;
    double q = T.diag[0] - sigma;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < T.diag.size(); ++i) {
        if (q == 0.0) q = 1e-300;
        q = T.diag[i] - sigma - T.off[i - 1] * T.off[i - 1] / q;
        if (q < 0.0) ++count;
    }
    return count;
}

inline double rayleigh(const Tridiagonal& T, const std::vector<double>& x) {
    const std::size_t N = x.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        double Tx = T.diag[i] * x[i];
        if (i > 0) Tx += T.off[i - 1] * x[i - 1];
        if (i + 1 < N) Tx += T.off[i] * x[i + 1];
        num += x[i] * Tx;
        den += x[i] * x[i];
    }
    return num / den;
}

inline void normalize(std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    s = std::sqrt(s);
    for (double& v : x) v /= s;
}

struct Eigenpair {
    double lambda;
    std::vector<double> x;
    int iterations;
};

inline Eigenpair smallest_eigenpair(const Tridiagonal& T) {
    const std::size_t N = T.diag.size();
    std::vector<double> x(N, 1.0);
    normalize(x);
    double lambda = rayleigh(T, x);
    int it = 0;
    // Inverse iteration at shift 0 (the operator is positive definite).
    for (; it < 10000; ++it) {
        x = shifted_solve(T, 0.0, x);
        normalize(x);
        const double next = rayleigh(T, x);
        const bool done = std::fabs(next - lambda) <= 1e-13 * std::fabs(next);
        lambda = next;
        if (done) break;
    }
    if (it == 10000) throw ConvergenceError("spectral solver: inverse iteration did not converge");
    // Shifted refinement from just below the Rayleigh estimate.
    for (int k = 0; k < 5; ++k) {
        const double sigma = lambda * (1.0 - 1e-6);
        x = shifted_solve(T, sigma, x);
        normalize(x);
        lambda = rayleigh(T, x);
        ++it;
    }
    if (sturm_count(T, lambda * (1.0 + 1e-9)) != 1)
        throw ConvergenceError("spectral solver: converged to an eigenvalue other than the first");
    return {lambda, x, it};
}

}  // namespace detail

/// First Dirichlet eigenvalue of the radial Laplacian on the model ball B_kappa(R), p = 2.
[[nodiscard]] inline SpectralResult spectral_lambda1(const ModelGeometry& g, double R, int N) {
    if (g.p != 2.0) throw ParameterError("spectral solver handles p = 2 only");
    if (N < 200) throw ParameterError("spectral solver needs N >= 200");
    if (!(R > 0.0)) throw ParameterError("spectral solver needs R > 0");
    if (!std::isfinite(volume_density(g, R))) throw UnsupportedRange("volume density overflows at R");
    SpectralResult out;
    const auto coarse = detail::smallest_eigenpair(detail::dirichlet_laplacian(g, R, N, nullptr));
    std::vector<double> nodes;
    const auto fineT = detail::dirichlet_laplacian(g, R, 2 * N, &nodes);
    const auto fine = detail::smallest_eigenpair(fineT);
    out.lambda_N = coarse.lambda;
    out.lambda_2N = fine.lambda;
    out.lambda1 = (4.0 * fine.lambda - coarse.lambda) / 3.0;
    out.error_estimate = std::fabs(fine.lambda - coarse.lambda) / 3.0;
    out.iterations = coarse.iterations + fine.iterations;
    // Undo the symmetrisation: v_i = x_i / sqrt(s^{n-1}(t_i)).
    out.t = nodes;
    out.v.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) out.v[i] = fine.x[i] / std::sqrt(volume_density(g, nodes[i]));
    const double v0 = out.v[0];
    for (double& v : out.v) v /= v0;
    return out;
}

}  // namespace rpair
