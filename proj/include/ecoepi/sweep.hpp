#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ecoepi/config.hpp"
#include "ecoepi/equilibria.hpp"
#include "ecoepi/integrate.hpp"
#include "ecoepi/stability.hpp"

namespace ecoepi {

/// Per-label outcome at one grid point.
struct EquilibriumSummary {
    EquilibriumLabel label = EquilibriumLabel::E0;
    Existence status = Existence::NoPositiveRoot;
    std::optional<Verdict> verdict;  // only for existing equilibria
    std::optional<FullState> point;
};

struct SweepPoint {
    double value = 0.0;
    std::optional<double> r0;
    std::vector<EquilibriumSummary> equilibria;
    /// V component of the limit point when the trajectory converged.
    std::optional<double> v_limit;
    RunStatus run_status = RunStatus::Completed;
};

/// `steps` evenly spaced values from `from` to `to` inclusive (steps >= 2).
std::vector<double> sweep_grid(double from, double to, int steps);

/// Evaluates one grid point: R0, equilibria with stability, and the limit of
/// the trajectory from the scenario's initial state.
SweepPoint evaluate_sweep_point(const ScenarioConfig& base, const std::string& param, double value);

/// Serial reference and OpenMP-parallel sweeps; identical results, ordered by
/// grid index. Error(InvalidInput) for an unknown parameter name.
std::vector<SweepPoint> sweep_serial(const ScenarioConfig& base, const std::string& param,
                                     std::span<const double> values);
std::vector<SweepPoint> sweep_parallel(const ScenarioConfig& base, const std::string& param,
                                       std::span<const double> values);

/// Independent integrations from many initial states.
std::vector<FullTrajectory> integrate_ensemble_serial(const ModelParams& p, std::span<const FullState> initial,
                                                      const IntegratorConfig& cfg);
std::vector<FullTrajectory> integrate_ensemble_parallel(const ModelParams& p, std::span<const FullState> initial,
                                                        const IntegratorConfig& cfg);

/// Labels reported per grid point for the full or reduced model.
std::vector<EquilibriumLabel> sweep_labels(bool disease_free);

}  // namespace ecoepi
