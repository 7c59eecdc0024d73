#include "ecoepi/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ecoepi/dopri.hpp"
#include "ecoepi/error.hpp"

namespace ecoepi {

void validate(const IntegratorConfig& cfg) {
    if (!(cfg.rtol > 0.0) || !(cfg.atol > 0.0)) throw Error(ErrorKind::InvalidInput, "tolerances must be positive");
    if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end)) throw Error(ErrorKind::InvalidInput, "t_end must be >= 0");
    if (!(cfg.convergence_tol > 0.0)) throw Error(ErrorKind::InvalidInput, "convergence_tol must be positive");
    if (cfg.output_stride < 0.0 || cfg.max_step < 0.0 || cfg.initial_step < 0.0)
        throw Error(ErrorKind::InvalidInput, "step controls must be >= 0");
}

namespace {

constexpr double kRejectBelow = -1e-10;
constexpr int kConvergedSteps = 3;

template <std::size_t N>
double max_norm(const std::array<double, N>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

template <class State, class Rhs>
Trajectory<State> run(Rhs&& rhs_raw, const State& initial, const IntegratorConfig& cfg) {
    constexpr std::size_t N = State::dimension;
    using Vec = std::array<double, N>;
    validate(cfg);

    Vec y = initial.to_array();
    for (double& x : y) {
        if (!std::isfinite(x)) throw Error(ErrorKind::InvalidState, "initial state is not finite");
        if (x < 0.0) {
            if (x > -kClampTolerance)
                x = 0.0;
            else
                throw Error(ErrorKind::InvalidState, "initial state has a negative component");
        }
    }

    Trajectory<State> traj;
    auto f = [&](double, const Vec& x) {
        ++traj.step_stats.rhs_evaluations;
        return rhs_raw(x);
    };

    double t = 0.0;
    traj.times.push_back(t);
    traj.states.push_back(State::from_array(y));
    if (cfg.t_end == 0.0) return traj;

    Vec k1 = f(t, y);
    const auto sc = [&](double a, double b) { return cfg.atol + cfg.rtol * std::max(std::abs(a), std::abs(b)); };

    double h = cfg.initial_step;
    if (h == 0.0) {
        // Hairer's starting-step heuristic with a single explicit Euler probe.
        double d0 = 0.0, d1 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double s = sc(y[i], y[i]);
            d0 += (y[i] / s) * (y[i] / s);
            d1 += (k1[i] / s) * (k1[i] / s);
        }
        d0 = std::sqrt(d0 / N);
        d1 = std::sqrt(d1 / N);
        h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h = std::min(h, cfg.t_end);
    }
    const double h_max = cfg.max_step > 0.0 ? cfg.max_step : cfg.t_end;
    h = std::min(h, h_max);

    double next_sample = cfg.output_stride > 0.0 ? cfg.output_stride : std::numeric_limits<double>::infinity();
    long sample_index = 1;
    double err_prev = 1e-4;
    int quiet_steps = 0;
    bool last_rejected = false;

    while (t < cfg.t_end) {
        if (traj.step_stats.accepted + traj.step_stats.rejected >= cfg.max_steps) {
            traj.status = RunStatus::Failed;
            traj.failure = "step limit reached";
            break;
        }
        const double target = std::min(cfg.t_end, next_sample);
        bool lands = false;
        double h_try = h;
        if (t + h_try >= target - 1e-12 * std::max(1.0, std::abs(target))) {
            h_try = target - t;
            lands = true;
        }
        if (h_try < 1e-14 * std::max(1.0, std::abs(t))) {
            traj.status = RunStatus::Failed;
            traj.failure = "step size underflow at t = " + std::to_string(t);
            break;
        }

        const auto r = dopri::step<N>(f, t, y, k1, h_try);
        double err = 0.0;
        bool finite = true;
        bool leaves_orthant = false;
        for (std::size_t i = 0; i < N; ++i) {
            if (!std::isfinite(r.y[i])) finite = false;
            if (r.y[i] < kRejectBelow) leaves_orthant = true;
            const double e = r.error[i] / sc(y[i], r.y[i]);
            err += e * e;
        }
        err = std::sqrt(err / N);
        if (!finite || !std::isfinite(err)) {
            ++traj.step_stats.rejected;
            h = 0.25 * h_try;
            last_rejected = true;
            continue;
        }

        if (err > 1.0 || leaves_orthant) {
            ++traj.step_stats.rejected;
            const double fac = leaves_orthant && err <= 1.0 ? 0.5 : std::max(0.2, 0.9 * std::pow(err, -0.2));
            h = h_try * fac;
            last_rejected = true;
            continue;
        }

        ++traj.step_stats.accepted;
        t = lands && target == cfg.t_end ? cfg.t_end : t + h_try;
        if (lands && target == next_sample) {
            ++sample_index;
            next_sample = cfg.output_stride * static_cast<double>(sample_index);
        }
        y = r.y;
        k1 = r.f_end;
        bool clamped = false;
        for (double& x : y)
            if (x < 0.0) {
                x = 0.0;
                clamped = true;
            }
        if (clamped) k1 = f(t, y);

        // PI controller (Gustafsson), exponents 0.7/5 and 0.4/5.
        const double e = std::max(err, 1e-10);
        double fac = 0.9 * std::pow(e, -0.14) * std::pow(err_prev, 0.08);
        fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 5.0);
        err_prev = std::max(err, 1e-4);
        last_rejected = false;
        // a landing step may have been shortened; grow from the controller's proposal
        h = std::min(h_max, std::max(h, h_try) * fac);

        const bool store = cfg.output_stride == 0.0 || lands || t == cfg.t_end;
        quiet_steps = max_norm(k1) < cfg.convergence_tol ? quiet_steps + 1 : 0;
        const bool converged = cfg.stop_on_convergence && quiet_steps >= kConvergedSteps;

        if (store || converged) {
            if (traj.times.back() < t) {
                traj.times.push_back(t);
                traj.states.push_back(State::from_array(y));
            }
        }
        if (converged) {
            traj.converged_to = State::from_array(y);
            traj.status = RunStatus::Converged;
            break;
        }
    }
    if (traj.status == RunStatus::Failed && traj.times.back() < t) {
        traj.times.push_back(t);
        traj.states.push_back(State::from_array(y));
    }
    return traj;
}

template <class State, class ChiFn>
BoundednessCheck check_impl(const Trajectory<State>& traj, const ModelParams& p, ChiFn&& total) {
    BoundednessCheck out;
    if (traj.states.empty() || !(max_decay_rate(p) > 0.0)) return out;
    const auto b = absorbing_bound(p);
    out.applicable = true;
    out.mu = b.mu;
    out.eta = b.eta;
    out.bound = b.bound;
    const std::size_t n = traj.states.size();
    const std::size_t first = n / 2 < n ? n / 2 : 0;
    for (std::size_t i = first; i < n; ++i) out.max_chi_observed = std::max(out.max_chi_observed, total(traj.states[i]));
    out.satisfied = out.max_chi_observed <= out.bound + kBoundEpsilon;
    return out;
}

}  // namespace

FullTrajectory integrate(const ModelParams& p, const FullState& initial, const IntegratorConfig& cfg) {
    auto traj = run<FullState>([&p](const std::array<double, 4>& x) { return rhs_full_raw(p, x); }, initial, cfg);
    traj.boundedness = check_boundedness(traj, p);
    return traj;
}

ReducedTrajectory integrate_reduced(const ModelParams& p, const ReducedState& initial, const IntegratorConfig& cfg) {
    auto traj =
        run<ReducedState>([&p](const std::array<double, 3>& x) { return rhs_reduced_raw(p, x); }, initial, cfg);
    traj.boundedness = check_boundedness(traj, p);
    return traj;
}

BoundednessCheck check_boundedness(const FullTrajectory& traj, const ModelParams& p) {
    return check_impl(traj, p, [](const FullState& x) { return chi(x); });
}

BoundednessCheck check_boundedness(const ReducedTrajectory& traj, const ModelParams& p) {
    return check_impl(traj, p, [](const ReducedState& x) { return chi(x.embed()); });
}

}  // namespace ecoepi
