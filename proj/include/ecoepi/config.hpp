#pragma once

#include <string>
#include <string_view>

#include "ecoepi/integrate.hpp"
#include "ecoepi/model.hpp"
#include "ecoepi/params.hpp"

namespace ecoepi {

/// One scenario: model parameters, initial densities and run controls.
///
/// Text format is line oriented `key = value`; `#` starts a comment. Every
/// model parameter key is required; the rest default as below.
struct ScenarioConfig {
    ModelParams params;
    FullState initial{0.5, 0.5, 0.5, 0.5};  // s0, i0, v0, p0
    double t_end = 500.0;
    double rtol = 1e-8;
    double atol = 1e-10;
    double output_stride = 1.0;
    bool disease_free = false;
    std::string label;

    IntegratorConfig integrator() const;
    bool operator==(const ScenarioConfig&) const = default;
};

/// Throws Error(Config) on unknown or duplicate keys, malformed numbers,
/// negative values and missing model keys (all of them named at once).
ScenarioConfig parse_config(std::string_view text);

/// Reads and parses a file; Error(Io) if it cannot be read.
ScenarioConfig load_config(const std::string& path);

/// Inverse of parse_config; numbers are written with round-trip precision.
std::string serialize_config(const ScenarioConfig& cfg);

}  // namespace ecoepi
