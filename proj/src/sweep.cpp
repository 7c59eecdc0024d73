#include "ecoepi/sweep.hpp"

#include <cmath>
#include <exception>

#include "ecoepi/error.hpp"

namespace ecoepi {

std::vector<double> sweep_grid(double from, double to, int steps) {
    if (steps < 2) throw Error(ErrorKind::InvalidInput, "a sweep needs at least 2 steps");
    if (!std::isfinite(from) || !std::isfinite(to)) throw Error(ErrorKind::InvalidInput, "sweep bounds must be finite");
    std::vector<double> out(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) out[static_cast<std::size_t>(i)] = from + (to - from) * i / (steps - 1);
    out.back() = to;
    return out;
}

std::vector<EquilibriumLabel> sweep_labels(bool disease_free) {
    using L = EquilibriumLabel;
    if (disease_free) return {L::DF0, L::DF1, L::DF2};
    return {L::E0, L::E1, L::E2, L::E3, L::E4, L::E5};
}

SweepPoint evaluate_sweep_point(const ScenarioConfig& base, const std::string& param, double value) {
    ModelParams p = base.params;
    if (!set_param(p, param, value)) throw Error(ErrorKind::InvalidInput, "unknown parameter '" + param + "'");

    SweepPoint out;
    out.value = value;
    try {
        out.r0 = r0(p).value;
    } catch (const Error&) {
        out.r0.reset();
    }

    const auto all = base.disease_free ? eq_reduced(p) : eq_all(p, false);
    for (auto label : sweep_labels(base.disease_free)) {
        const Equilibrium* pick = nullptr;
        for (const auto& e : all) {
            if (e.label != label) continue;
            if (!pick || (e.exists() && !pick->exists())) pick = &e;
        }
        EquilibriumSummary s;
        s.label = label;
        if (pick) {
            s.status = pick->status;
            s.point = pick->point;
            if (pick->exists()) s.verdict = classify(p, *pick).verdict;
        }
        out.equilibria.push_back(s);
    }

    const auto cfg = base.integrator();
    if (base.disease_free) {
        const auto traj = integrate_reduced(p, {base.initial.S, base.initial.V, base.initial.P}, cfg);
        out.run_status = traj.status;
        if (traj.converged_to) out.v_limit = traj.converged_to->V;
    } else {
        const auto traj = integrate(p, base.initial, cfg);
        out.run_status = traj.status;
        if (traj.converged_to) out.v_limit = traj.converged_to->V;
    }
    return out;
}

std::vector<SweepPoint> sweep_serial(const ScenarioConfig& base, const std::string& param,
                                     std::span<const double> values) {
    if (!get_param(base.params, param)) throw Error(ErrorKind::InvalidInput, "unknown parameter '" + param + "'");
    std::vector<SweepPoint> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(evaluate_sweep_point(base, param, v));
    return out;
}

std::vector<SweepPoint> sweep_parallel(const ScenarioConfig& base, const std::string& param,
                                       std::span<const double> values) {
    if (!get_param(base.params, param)) throw Error(ErrorKind::InvalidInput, "unknown parameter '" + param + "'");
    const auto n = static_cast<long>(values.size());
    std::vector<SweepPoint> out(values.size());
    std::vector<std::exception_ptr> errors(values.size());

#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            out[idx] = evaluate_sweep_point(base, param, values[idx]);
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    }
    // report the lowest-index failure, as the serial sweep would
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<FullTrajectory> integrate_ensemble_serial(const ModelParams& p, std::span<const FullState> initial,
                                                      const IntegratorConfig& cfg) {
    std::vector<FullTrajectory> out;
    out.reserve(initial.size());
    for (const auto& x0 : initial) out.push_back(integrate(p, x0, cfg));
    return out;
}

std::vector<FullTrajectory> integrate_ensemble_parallel(const ModelParams& p, std::span<const FullState> initial,
                                                        const IntegratorConfig& cfg) {
    const auto n = static_cast<long>(initial.size());
    std::vector<FullTrajectory> out(initial.size());
    std::vector<std::exception_ptr> errors(initial.size());

#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            out[idx] = integrate(p, initial[idx], cfg);
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace ecoepi
