#pragma once

// Dormand-Prince 5(4) embedded pair: the 5th-order solution propagates, the
// difference to the 4th-order one estimates the local error.

#include <array>
#include <cstddef>

namespace ecoepi::dopri {

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
struct StepResult {
    Vec<N> y;      // 5th-order solution
    Vec<N> error;  // y5 - y4
    Vec<N> f_end;  // f(t + h, y), reusable as the next first stage (FSAL)
};

namespace coef {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b(5th) - b(4th)
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace coef

/// One step of size h from (t, y) given k1 = f(t, y).
template <std::size_t N, class F>
StepResult<N> step(F&& f, double t, const Vec<N>& y, const Vec<N>& k1, double h) {
    using namespace coef;
    Vec<N> tmp;
    auto stage = [&](auto&& combine) {
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * combine(i);
        return tmp;
    };
    const Vec<N> k2 = f(t + c2 * h, stage([&](std::size_t i) { return a21 * k1[i]; }));
    const Vec<N> k3 = f(t + c3 * h, stage([&](std::size_t i) { return a31 * k1[i] + a32 * k2[i]; }));
    const Vec<N> k4 =
        f(t + c4 * h, stage([&](std::size_t i) { return a41 * k1[i] + a42 * k2[i] + a43 * k3[i]; }));
    const Vec<N> k5 = f(t + c5 * h, stage([&](std::size_t i) {
                            return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i];
                        }));
    const Vec<N> k6 = f(t + h, stage([&](std::size_t i) {
                            return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
                        }));
    StepResult<N> out;
    for (std::size_t i = 0; i < N; ++i)
        out.y[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    out.f_end = f(t + h, out.y);
    for (std::size_t i = 0; i < N; ++i)
        out.error[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * out.f_end[i]);
    return out;
}

/// Fixed-step propagation, used to measure the convergence order.
template <std::size_t N, class F>
Vec<N> integrate_fixed(F&& f, double t0, Vec<N> y, double t1, int steps) {
    const double h = (t1 - t0) / steps;
    double t = t0;
    Vec<N> k1 = f(t, y);
    for (int s = 0; s < steps; ++s) {
        auto r = step<N>(f, t, y, k1, h);
        y = r.y;
        k1 = r.f_end;
        t = t0 + (s + 1) * h;
    }
    return y;
}

}  // namespace ecoepi::dopri
