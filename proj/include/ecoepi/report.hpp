#pragma once

#include <optional>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "ecoepi/config.hpp"
#include "ecoepi/sweep.hpp"

namespace ecoepi {

inline constexpr std::string_view kToolVersion = "1.0.0";

struct AnalysisOptions {
    /// Written verbatim into the report; left null by default so that
    /// repeated runs are byte-identical.
    std::optional<std::string> timestamp;
};

/// Equilibria, stability, R0 and the absorbing bound for one scenario.
/// Key order is fixed. Failures of individual parts (e.g. undefined R0) are
/// rendered as {"error": {"kind", "message"}} objects in place.
nlohmann::ordered_json analysis_report(const ScenarioConfig& cfg, const AnalysisOptions& opts = {});

/// `t,S,I,V,P` (or `t,S,V,P` for the disease-free model), one row per stored
/// sample, 12 significant digits. Throws Error(IntegrationFailure) if the
/// integration fails.
std::string simulate_csv(const ScenarioConfig& cfg);

/// Sweep table: parameter value, r0, per-equilibrium status and verdict, v_limit.
std::string sweep_csv(std::span<const SweepPoint> points, const std::string& param, bool disease_free);

/// 12 significant digits, shortest form.
std::string format_number(double v);

}  // namespace ecoepi
