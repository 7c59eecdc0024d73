#pragma once

#include <array>
#include <cstddef>

#include <Eigen/Dense>

#include "ecoepi/params.hpp"

namespace ecoepi {

/// Densities of susceptible, infected and vaccinated prey and of predators.
struct FullState {
    static constexpr std::size_t dimension = 4;
    double S = 0.0, I = 0.0, V = 0.0, P = 0.0;

    std::array<double, 4> to_array() const { return {S, I, V, P}; }
    static FullState from_array(const std::array<double, 4>& a) { return {a[0], a[1], a[2], a[3]}; }
    bool operator==(const FullState&) const = default;
};

/// Disease-free restriction (I identically zero).
struct ReducedState {
    static constexpr std::size_t dimension = 3;
    double S = 0.0, V = 0.0, P = 0.0;

    std::array<double, 3> to_array() const { return {S, V, P}; }
    static ReducedState from_array(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }
    FullState embed() const { return {S, 0.0, V, P}; }
    bool operator==(const ReducedState&) const = default;
};

/// Components in (-kClampTolerance, 0) are round-off and get clamped to zero.
inline constexpr double kClampTolerance = 1e-12;

/// Right-hand sides with input checking: non-finite components or components
/// below -kClampTolerance throw Error(InvalidState).
FullState rhs_full(const ModelParams& p, const FullState& x);
ReducedState rhs_reduced(const ModelParams& p, const ReducedState& x);

/// Unchecked evaluations on raw arrays, used by the integrator stages.
std::array<double, 4> rhs_full_raw(const ModelParams& p, const std::array<double, 4>& x);
std::array<double, 3> rhs_reduced_raw(const ModelParams& p, const std::array<double, 3>& x);

Eigen::Matrix4d jacobian_full(const ModelParams& p, const FullState& x);
Eigen::Matrix3d jacobian_reduced(const ModelParams& p, const ReducedState& x);

/// Divergence of the S-V subsystem weighted by 1/(SV); negative whenever any
/// of r, theta, phi is positive, which rules out closed orbits in the plane.
/// Throws Error(Domain) unless s > 0 and v > 0.
double dulac_expression(const ModelParams& p, double s, double v);

/// True when r = theta = phi = 0 and the Dulac expression vanishes identically.
bool dulac_is_degenerate(const ModelParams& p);

/// Total population S + I + V + P.
double chi(const FullState& x);

/// Absorbing-set bound: for 0 < mu <= min(m2+d2+c, m3+d3, d4),
/// d(chi)/dt + mu*chi <= eta with eta = k (r+mu)^2 / (4r), hence
/// limsup chi <= eta/mu.
struct AbsorbingBound {
    double mu = 0.0;
    double eta = 0.0;
    double bound = 0.0;
};

/// Largest admissible decay rate min(m2+d2+c, m3+d3, d4).
double max_decay_rate(const ModelParams& p);

/// Uses mu = max_decay_rate / 2. Throws Error(Domain) if the rate is zero.
AbsorbingBound absorbing_bound(const ModelParams& p);
/// Explicit mu; throws Error(Domain) unless 0 < mu <= max_decay_rate.
AbsorbingBound absorbing_bound(const ModelParams& p, double mu);

}  // namespace ecoepi
