#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "ecoepi/model.hpp"
#include "ecoepi/params.hpp"

namespace testing_support {

inline double max_norm(const ecoepi::FullState& x) {
    return std::max({std::abs(x.S), std::abs(x.I), std::abs(x.V), std::abs(x.P)});
}
inline double max_norm(const ecoepi::ReducedState& x) {
    return std::max({std::abs(x.S), std::abs(x.V), std::abs(x.P)});
}

inline double dist(const ecoepi::FullState& a, const ecoepi::FullState& b) {
    return std::max({std::abs(a.S - b.S), std::abs(a.I - b.I), std::abs(a.V - b.V), std::abs(a.P - b.P)});
}

/// Random parameter set around the fixture magnitudes, q < 1.
inline ecoepi::ModelParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ecoepi::ModelParams p;
    p.r = 0.2 + 2.0 * u(rng);
    p.k = 0.5 + 4.0 * u(rng);
    p.beta = 2.0 * u(rng);
    p.sigma = 0.5 * u(rng);
    p.phi = 1.5 * u(rng);
    p.theta = 1.5 * u(rng);
    p.p1 = 0.3 * u(rng);
    p.p2 = 0.3 * u(rng);
    p.p3 = 0.3 * u(rng);
    p.q1 = 0.95 * u(rng);
    p.q2 = 0.95 * u(rng);
    p.q3 = 0.95 * u(rng);
    p.m1 = 0.3 * u(rng);
    p.m2 = 0.3 * u(rng);
    p.m3 = 0.3 * u(rng);
    p.d1 = 0.05 + 0.3 * u(rng);
    p.d2 = 0.05 + 0.3 * u(rng);
    p.d3 = 0.05 + 0.3 * u(rng);
    p.d4 = 0.05 + 0.3 * u(rng);
    p.c = 0.5 * u(rng);
    return p;
}

inline ecoepi::FullState random_state(std::mt19937_64& rng, double lo = 0.01, double hi = 3.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    return {u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace testing_support
