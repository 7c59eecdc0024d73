#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ecoepi {

/// Rates and coefficients of the four-compartment prey/predator model.
/// Migration (m1..m3) enters the equations exactly like mortality but is
/// kept separate so it can be swept on its own.
struct ModelParams {
    double r = 0.0;      // prey growth rate
    double k = 0.0;      // carrying capacity
    double beta = 0.0;   // infection of susceptible prey
    double sigma = 0.0;  // infection of vaccinated prey
    double phi = 0.0;    // vaccination rate
    double theta = 0.0;  // vaccination wear-off
    double p1 = 0.0, p2 = 0.0, p3 = 0.0;  // predation on S, I, V
    double q1 = 0.0, q2 = 0.0, q3 = 0.0;  // conversion efficiencies
    double m1 = 0.0, m2 = 0.0, m3 = 0.0;  // migration
    double d1 = 0.0, d2 = 0.0, d3 = 0.0, d4 = 0.0;  // natural death
    double c = 0.0;      // disease-induced death

    bool operator==(const ModelParams&) const = default;
};

inline constexpr std::size_t kParamCount = 20;

/// Config-file key names, in the order used for serialization.
const std::array<std::string_view, kParamCount>& param_keys();

/// Member access by key; nullopt for an unknown name.
std::optional<double> get_param(const ModelParams& p, std::string_view key);
bool set_param(ModelParams& p, std::string_view key, double value);

struct ValidationOptions {
    /// Conversion efficiencies >= 1 break the boundedness argument but the
    /// dynamics are still well defined.
    bool allow_conversion_ge_one = false;
};

/// Throws Error(InvalidParams) naming the first offending key.
void validate(const ModelParams& p, ValidationOptions opts = {});

/// Soft checks that never reject, e.g. the modelling assumption p2 > p1.
std::vector<std::string> lint(const ModelParams& p);

namespace presets {

/// Base parameter set used throughout the numerical examples, no migration.
ModelParams base_set();
/// Disease-free reduced system: base set, p1 = p3 = 0.125.
ModelParams disease_free_system();
/// Full model without migration: base set with p1 = p3 = 0.1.
ModelParams case_i();
/// case_i plus migration m1 = 0.25, m2 = 0.125, m3 = 0.25.
ModelParams case_ii();

}  // namespace presets

}  // namespace ecoepi
