#include "ecoepi/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ecoepi/error.hpp"

namespace ecoepi {

namespace {

template <std::size_t N>
std::array<double, N> checked(std::array<double, N> x) {
    for (std::size_t i = 0; i < N; ++i) {
        if (!std::isfinite(x[i]))
            throw Error(ErrorKind::InvalidState, "state component " + std::to_string(i) + " is not finite");
        if (x[i] < 0.0) {
            if (x[i] > -kClampTolerance)
                x[i] = 0.0;
            else
                throw Error(ErrorKind::InvalidState, "state component " + std::to_string(i) + " is negative");
        }
    }
    return x;
}

}  // namespace

std::array<double, 4> rhs_full_raw(const ModelParams& p, const std::array<double, 4>& x) {
    const auto [S, I, V, P] = x;
    const double dS = p.r * S * (1.0 - (S + I) / p.k) - p.beta * S * I - p.phi * S + p.theta * V -
                      p.p1 * P * S - p.m1 * S - p.d1 * S;
    const double dI = p.beta * S * I + p.sigma * V * I - p.p2 * P * I - p.m2 * I - p.d2 * I - p.c * I;
    const double dV = p.phi * S - p.theta * V - p.sigma * V * I - p.p3 * P * V - p.m3 * V - p.d3 * V;
    const double dP = p.q1 * p.p1 * P * S + p.q2 * p.p2 * P * I + p.q3 * p.p3 * P * V - p.d4 * P;
    return {dS, dI, dV, dP};
}

std::array<double, 3> rhs_reduced_raw(const ModelParams& p, const std::array<double, 3>& x) {
    const auto [S, V, P] = x;
    const double dS = p.r * S * (1.0 - S / p.k) - p.phi * S + p.theta * V - p.p1 * P * S - p.m1 * S - p.d1 * S;
    const double dV = p.phi * S - p.theta * V - p.p3 * P * V - p.m3 * V - p.d3 * V;
    const double dP = p.q1 * p.p1 * P * S + p.q3 * p.p3 * P * V - p.d4 * P;
    return {dS, dV, dP};
}

FullState rhs_full(const ModelParams& p, const FullState& x) {
    return FullState::from_array(rhs_full_raw(p, checked(x.to_array())));
}

ReducedState rhs_reduced(const ModelParams& p, const ReducedState& x) {
    return ReducedState::from_array(rhs_reduced_raw(p, checked(x.to_array())));
}

Eigen::Matrix4d jacobian_full(const ModelParams& p, const FullState& state) {
    const auto [S, I, V, P] = checked(state.to_array());
    Eigen::Matrix4d J;
    J(0, 0) = p.r - 2.0 * p.r * S / p.k - p.r * I / p.k - p.beta * I - p.phi - p.p1 * P - p.m1 - p.d1;
    J(0, 1) = -p.r * S / p.k - p.beta * S;
    J(0, 2) = p.theta;
    J(0, 3) = -p.p1 * S;

    J(1, 0) = p.beta * I;
    J(1, 1) = p.beta * S + p.sigma * V - p.p2 * P - p.m2 - p.d2 - p.c;
    J(1, 2) = p.sigma * I;
    J(1, 3) = -p.p2 * I;

    J(2, 0) = p.phi;
    J(2, 1) = -p.sigma * V;
    J(2, 2) = -p.sigma * I - p.theta - p.p3 * P - p.m3 - p.d3;
    J(2, 3) = -p.p3 * V;

    J(3, 0) = p.q1 * p.p1 * P;
    J(3, 1) = p.q2 * p.p2 * P;
    J(3, 2) = p.q3 * p.p3 * P;
    J(3, 3) = p.q1 * p.p1 * S + p.q2 * p.p2 * I + p.q3 * p.p3 * V - p.d4;
    return J;
}

Eigen::Matrix3d jacobian_reduced(const ModelParams& p, const ReducedState& state) {
    const auto [S, V, P] = checked(state.to_array());
    Eigen::Matrix3d J;
    J(0, 0) = p.r - 2.0 * p.r * S / p.k - p.phi - p.p1 * P - p.m1 - p.d1;
    J(0, 1) = p.theta;
    J(0, 2) = -p.p1 * S;

    J(1, 0) = p.phi;
    J(1, 1) = -p.theta - p.p3 * P - p.m3 - p.d3;
    J(1, 2) = -p.p3 * V;

    J(2, 0) = p.q1 * p.p1 * P;
    J(2, 1) = p.q3 * p.p3 * P;
    J(2, 2) = p.q1 * p.p1 * S + p.q3 * p.p3 * V - p.d4;
    return J;
}

double dulac_expression(const ModelParams& p, double s, double v) {
    if (!(s > 0.0) || !(v > 0.0))
        throw Error(ErrorKind::Domain, "Dulac expression needs s > 0 and v > 0");
    return -p.r / (p.k * v) - p.theta / (s * s) - p.phi / (v * v);
}

bool dulac_is_degenerate(const ModelParams& p) { return p.r == 0.0 && p.theta == 0.0 && p.phi == 0.0; }

double chi(const FullState& x) { return x.S + x.I + x.V + x.P; }

double max_decay_rate(const ModelParams& p) {
    return std::min({p.m2 + p.d2 + p.c, p.m3 + p.d3, p.d4});
}

AbsorbingBound absorbing_bound(const ModelParams& p) {
    const double rate = max_decay_rate(p);
    if (!(rate > 0.0)) throw Error(ErrorKind::Domain, "absorbing bound needs min(m2+d2+c, m3+d3, d4) > 0");
    return absorbing_bound(p, 0.5 * rate);
}

AbsorbingBound absorbing_bound(const ModelParams& p, double mu) {
    if (!(mu > 0.0) || mu > max_decay_rate(p))
        throw Error(ErrorKind::Domain, "mu must lie in (0, min(m2+d2+c, m3+d3, d4)]");
    AbsorbingBound b;
    b.mu = mu;
    b.eta = p.k * (p.r + mu) * (p.r + mu) / (4.0 * p.r);
    b.bound = b.eta / mu;
    return b;
}

}  // namespace ecoepi
