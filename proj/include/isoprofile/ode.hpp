#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

/// \file
/// Adaptive Dormand-Prince 5(4) integration for small first-order systems.

namespace isoprofile {

template <std::size_t N>
using OdeState = std::array<double, N>;

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    double initial_step = 0.0;  // 0 = choose automatically
    long max_steps = 2'000'000;
};

namespace detail {

template <std::size_t N, typename F>
bool dp_step(F&& f, double t, const OdeState<N>& y, double h, OdeState<N>& y_out,
             double& err_norm, const OdeOptions& opt) {
    // Dormand-Prince RK5(4)7M coefficients.
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    OdeState<N> k1 = f(t, y), tmp;
    auto axpy = [&](const auto&... terms) {
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (... + (terms.first * terms.second[i]));
    };
    axpy(std::pair{a21, k1});
    OdeState<N> k2 = f(t + c2 * h, tmp);
    axpy(std::pair{a31, k1}, std::pair{a32, k2});
    OdeState<N> k3 = f(t + c3 * h, tmp);
    axpy(std::pair{a41, k1}, std::pair{a42, k2}, std::pair{a43, k3});
    OdeState<N> k4 = f(t + c4 * h, tmp);
    axpy(std::pair{a51, k1}, std::pair{a52, k2}, std::pair{a53, k3}, std::pair{a54, k4});
    OdeState<N> k5 = f(t + c5 * h, tmp);
    axpy(std::pair{a61, k1}, std::pair{a62, k2}, std::pair{a63, k3}, std::pair{a64, k4},
         std::pair{a65, k5});
    OdeState<N> k6 = f(t + h, tmp);
    for (std::size_t i = 0; i < N; ++i)
        y_out[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    OdeState<N> k7 = f(t + h, y_out);

    err_norm = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                              e6 * k6[i] + e7 * k7[i]);
        const double scale = opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(y_out[i]));
        err_norm = std::max(err_norm, std::abs(e) / scale);
    }
    return err_norm <= 1.0;
}

}  // namespace detail

/// Integrate y' = f(t, y) from t0 to t1 (t1 > t0).  The observer is called
/// after every accepted step as observer(t, y) and may return false to stop
/// early; integrate() then returns the state at the stopping step.
template <std::size_t N, typename F, typename Observer>
OdeState<N> integrate_ode(F&& f, double t0, OdeState<N> y, double t1,
                          const OdeOptions& opt, Observer&& observer) {
    if (!(t1 > t0)) throw std::invalid_argument("integrate_ode: need t1 > t0");
    double t = t0;
    double h = opt.initial_step > 0 ? opt.initial_step : (t1 - t0) * 1e-4;
    long steps = 0;
    OdeState<N> y_next;
    while (t < t1) {
        // Remaining gap at ulp scale: advancing the state is below tolerance.
        if (t1 - t <= 1e-13 * std::max(std::abs(t), std::abs(t1))) break;
        if (++steps > opt.max_steps)
            throw std::runtime_error("integrate_ode: step budget exhausted");
        h = std::min(h, t1 - t);
        double err = 0.0;
        const bool ok = detail::dp_step<N>(f, t, y, h, y_next, err, opt);
        if (ok) {
            t += h;
            y = y_next;
            if (!observer(t, y)) return y;
        }
        const double factor = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
        if (!(h > 0) || t + h == t)
            throw std::runtime_error("integrate_ode: step size underflow");
    }
    return y;
}

template <std::size_t N, typename F>
OdeState<N> integrate_ode(F&& f, double t0, OdeState<N> y0, double t1,
                          const OdeOptions& opt = {}) {
    return integrate_ode<N>(f, t0, y0, t1, opt, [](double, const OdeState<N>&) { return true; });
}

}  // namespace isoprofile
