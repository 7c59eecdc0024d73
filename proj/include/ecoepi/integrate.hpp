#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecoepi/model.hpp"
#include "ecoepi/params.hpp"

namespace ecoepi {

struct IntegratorConfig {
    double rtol = 1e-8;
    double atol = 1e-10;
    double t_end = 500.0;
    double initial_step = 0.0;  // 0: automatic
    double max_step = 0.0;      // 0: unlimited
    double output_stride = 1.0; // 0: store every accepted step
    double convergence_tol = 1e-8;
    bool stop_on_convergence = true;
    long max_steps = 10'000'000;
};

/// Throws Error(InvalidInput) for non-positive tolerances or negative t_end.
void validate(const IntegratorConfig& cfg);

struct BoundednessCheck {
    bool applicable = false;
    double mu = 0.0;
    double eta = 0.0;
    double bound = 0.0;
    double max_chi_observed = 0.0;
    bool satisfied = false;
};

inline constexpr double kBoundEpsilon = 1e-6;

struct StepStats {
    long accepted = 0;
    long rejected = 0;
    long rhs_evaluations = 0;
};

enum class RunStatus { Completed, Converged, Failed };

template <class State>
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::optional<State> converged_to;
    BoundednessCheck boundedness;
    StepStats step_stats;
    RunStatus status = RunStatus::Completed;
    std::string failure;

    bool ok() const { return status != RunStatus::Failed; }
};

using FullTrajectory = Trajectory<FullState>;
using ReducedTrajectory = Trajectory<ReducedState>;

/// Adaptive Dormand-Prince 5(4) with PI step control. Steps that leave the
/// nonnegative orthant by more than 1e-10 are rejected; smaller negative
/// excursions are clamped to zero. Stops early once the right-hand side
/// max-norm stays below `convergence_tol` for three accepted steps.
/// Integration failures (step underflow, non-finite state) are reported via
/// `status` with the partial trajectory kept; invalid inputs throw.
FullTrajectory integrate(const ModelParams& p, const FullState& initial, const IntegratorConfig& cfg = {});
ReducedTrajectory integrate_reduced(const ModelParams& p, const ReducedState& initial,
                                    const IntegratorConfig& cfg = {});

/// Absorbing-set test on the final half of the stored samples.
BoundednessCheck check_boundedness(const FullTrajectory& traj, const ModelParams& p);
BoundednessCheck check_boundedness(const ReducedTrajectory& traj, const ModelParams& p);

}  // namespace ecoepi
