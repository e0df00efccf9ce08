#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "rpair/error.hpp"

namespace rpair {

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    /// |y| beyond this counts as blow-up.
    double blowup = 1e12;
    /// Steps shorter than this multiple of |t| count as blow-up.
    double min_step_rel = 1e-14;
};

enum class OdeStatus { Completed, BlowUp, Error };

struct OdeSolution {
    std::vector<double> t;
    std::vector<double> y;
    OdeStatus status = OdeStatus::Completed;
    double t_stop = 0.0;
    std::string message;
};

/// Dormand-Prince 5(4) for a scalar equation y' = f(t, y), reporting y at the requested
/// sample abscissae (ordered in the direction of integration) through the method's
/// fourth-order continuous extension.
[[nodiscard]] inline OdeSolution integrate_scalar(const std::function<double(double, double)>& f, double t0,
                                                  double y0, const std::vector<double>& samples,
                                                  const OdeOptions& opt = {}) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr std::array<double, 7> b = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784,
                                                11.0 / 84, 0.0};
    static constexpr std::array<double, 7> e = {71.0 / 57600, 0.0, -71.0 / 16695, 71.0 / 1920,
                                                -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
    // Continuous extension y(t + th h) = y + h sum_i K_i (P_i1 th + P_i2 th^2 + P_i3 th^3 + P_i4 th^4).
    static constexpr std::array<std::array<double, 4>, 7> P = {{
        {1.0, -8048581381.0 / 2820520608.0, 8663915743.0 / 2820520608.0, -12715105075.0 / 11282082432.0},
        {0.0, 0.0, 0.0, 0.0},
        {0.0, 131558114200.0 / 32700410799.0, -68118460800.0 / 10900136933.0, 87487479700.0 / 32700410799.0},
        {0.0, -1754552775.0 / 470086768.0, 14199869525.0 / 1410260304.0, -10690763975.0 / 1880347072.0},
        {0.0, 127303824393.0 / 49829197408.0, -318862633887.0 / 49829197408.0, 701980252875.0 / 199316789632.0},
        {0.0, -282668133.0 / 205662961.0, 2019193451.0 / 616988883.0, -1453857185.0 / 822651844.0},
        {0.0, 40617522.0 / 29380423.0, -110615467.0 / 29380423.0, 69997945.0 / 29380423.0},
    }};

    OdeSolution out;
    out.t_stop = t0;
    if (samples.empty()) return out;
    const double t_end = samples.back();
    const double dir = t_end >= t0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i)
        if ((samples[i + 1] - samples[i]) * dir < 0.0)
            throw ParameterError("integrate_scalar: samples must be ordered in the integration direction");

    std::size_t next = 0;
    while (next < samples.size() && samples[next] == t0) {
        out.t.push_back(t0);
        out.y.push_back(y0);
        ++next;
    }

    double t = t0, y = y0;
    std::array<double, 7> K{};
    try {
        K[0] = f(t, y);
        double h = dir * std::max(1e-6 * std::fabs(t_end - t0), 1e-12);
        while (next < samples.size()) {
            const double remaining = t_end - t;
            if (std::fabs(h) > std::fabs(remaining)) h = remaining;
            if (std::fabs(h) < opt.min_step_rel * std::max(std::fabs(t), 1e-300)) {
                out.status = OdeStatus::BlowUp;
                out.t_stop = t;
                out.message = "step size underflow";
                return out;
            }
            K[1] = f(t + c2 * h, y + h * a21 * K[0]);
            K[2] = f(t + c3 * h, y + h * (a31 * K[0] + a32 * K[1]));
            K[3] = f(t + c4 * h, y + h * (a41 * K[0] + a42 * K[1] + a43 * K[2]));
            K[4] = f(t + c5 * h, y + h * (a51 * K[0] + a52 * K[1] + a53 * K[2] + a54 * K[3]));
            K[5] = f(t + h, y + h * (a61 * K[0] + a62 * K[1] + a63 * K[2] + a64 * K[3] + a65 * K[4]));
            double y_new = y;
            for (int i = 0; i < 6; ++i) y_new += h * b[i] * K[i];
            K[6] = f(t + h, y_new);
            double err = 0.0;
            for (int i = 0; i < 7; ++i) err += e[i] * K[i];
            err = std::fabs(h * err) / (opt.abs_tol + opt.rel_tol * std::max(std::fabs(y), std::fabs(y_new)));
            if (!std::isfinite(err) || !std::isfinite(y_new)) err = 1e10;

            if (err <= 1.0) {
                const double t_new = t + h;
                while (next < samples.size() && (samples[next] - t_new) * dir <= 0.0) {
                    const double th = (samples[next] - t) / h;
                    double acc = 0.0;
                    for (int i = 0; i < 7; ++i)
                        acc += K[i] * th * (P[i][0] + th * (P[i][1] + th * (P[i][2] + th * P[i][3])));
                    out.t.push_back(samples[next]);
                    out.y.push_back(y + h * acc);
                    ++next;
                }
                t = t_new;
                y = y_new;
                K[0] = K[6];
                out.t_stop = t;
                if (std::fabs(y) > opt.blowup) {
                    out.status = OdeStatus::BlowUp;
                    out.message = "solution exceeded blow-up threshold";
                    return out;
                }
            }
            const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h *= factor;
        }
    } catch (const Error& ex) {
        out.status = OdeStatus::Error;
        out.t_stop = t;
        out.message = ex.what();
    }
    return out;
}

}  // namespace rpair
