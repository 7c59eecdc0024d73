#include "ecoepi/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ecoepi/error.hpp"
#include "ecoepi/stability.hpp"

namespace ecoepi {

using nlohmann::ordered_json;

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

ordered_json number_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json error_object(const Error& e) {
    ordered_json o;
    o["error"]["kind"] = std::string(to_string(e.kind()));
    o["error"]["message"] = e.what();
    return o;
}

ordered_json point_json(const Equilibrium& e) {
    ordered_json o;
    o["S"] = number_or_null(e.point.S);
    if (!is_reduced(e.label)) o["I"] = number_or_null(e.point.I);
    o["V"] = number_or_null(e.point.V);
    o["P"] = number_or_null(e.point.P);
    return o;
}

ordered_json stability_json(const StabilityReport& s) {
    ordered_json o;
    o["verdict"] = std::string(to_string(s.verdict));
    o["char_coeffs"] = s.char_coeffs;
    o["block_coeffs"] = s.block_coeffs;
    o["factored_eigenvalues"] = ordered_json::array();
    for (const auto& f : s.factored_eigenvalues) o["factored_eigenvalues"].push_back({{"name", f.name}, {"value", f.value}});
    o["hurwitz"] = ordered_json::array();
    for (const auto& c : s.hurwitz_conditions)
        o["hurwitz"].push_back({{"condition", c.name}, {"value", c.value}, {"holds", c.holds}});
    o["eigenvalues"] = ordered_json::array();
    for (const auto& z : s.eigenvalues) o["eigenvalues"].push_back({{"re", z.real()}, {"im", z.imag()}});
    return o;
}

double max_abs(const FullState& x) {
    double m = 0.0;
    for (double v : x.to_array()) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

ordered_json analysis_report(const ScenarioConfig& cfg, const AnalysisOptions& opts) {
    const ModelParams& p = cfg.params;
    ordered_json rep;
    rep["tool"] = "ecoepi";
    rep["version"] = std::string(kToolVersion);
    rep["timestamp"] = opts.timestamp ? ordered_json(*opts.timestamp) : ordered_json(nullptr);
    rep["scenario"] = cfg.label;
    rep["model"] = cfg.disease_free ? "disease_free" : "full";

    ordered_json params;
    for (auto key : param_keys()) params[std::string(key)] = *get_param(p, key);
    rep["params"] = params;

    try {
        const auto r = r0(p);
        rep["r0"] = {{"value", r.value}, {"S1", r.S1}, {"V1", r.V1}, {"endemic", r.endemic}};
    } catch (const Error& e) {
        rep["r0"] = error_object(e);
    }

    rep["equilibria"] = ordered_json::array();
    const auto eqs = cfg.disease_free ? eq_reduced(p) : eq_all(p, false);
    for (const auto& e : eqs) {
        ordered_json o;
        o["label"] = std::string(to_string(e.label));
        o["status"] = std::string(to_string(e.status));
        o["point"] = point_json(e);
        o["residual"] = number_or_null(e.residual);
        o["notes"] = e.notes;
        if (e.exists()) {
            const double fresh = equilibrium_residual(p, e.label, e.point);
            if (!(fresh < 1e-6 * (1.0 + max_abs(e.point))))
                throw Error(ErrorKind::ConsistencyFailure,
                            "equilibrium " + std::string(to_string(e.label)) + " failed residual re-check");
            try {
                o["stability"] = stability_json(classify(p, e));
            } catch (const Error& err) {
                o["stability"] = error_object(err);
            }
        } else {
            o["stability"] = nullptr;
        }
        rep["equilibria"].push_back(std::move(o));
    }

    try {
        const auto b = absorbing_bound(p);
        rep["boundedness"] = {{"mu", b.mu}, {"eta", b.eta}, {"bound", b.bound}};
    } catch (const Error& e) {
        rep["boundedness"] = error_object(e);
    }

    rep["lint"] = lint(p);
    return rep;
}

std::string simulate_csv(const ScenarioConfig& cfg) {
    std::ostringstream os;
    auto fail_if = [](RunStatus status, const std::string& why) {
        if (status == RunStatus::Failed) throw Error(ErrorKind::IntegrationFailure, "integration failed: " + why);
    };
    if (cfg.disease_free) {
        const auto traj = integrate_reduced(cfg.params, {cfg.initial.S, cfg.initial.V, cfg.initial.P}, cfg.integrator());
        fail_if(traj.status, traj.failure);
        os << "t,S,V,P\n";
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            const auto& x = traj.states[i];
            os << format_number(traj.times[i]) << ',' << format_number(x.S) << ',' << format_number(x.V) << ','
               << format_number(x.P) << '\n';
        }
    } else {
        const auto traj = integrate(cfg.params, cfg.initial, cfg.integrator());
        fail_if(traj.status, traj.failure);
        os << "t,S,I,V,P\n";
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            const auto& x = traj.states[i];
            os << format_number(traj.times[i]) << ',' << format_number(x.S) << ',' << format_number(x.I) << ','
               << format_number(x.V) << ',' << format_number(x.P) << '\n';
        }
    }
    return os.str();
}

std::string sweep_csv(std::span<const SweepPoint> points, const std::string& param, bool disease_free) {
    std::ostringstream os;
    os << param << ",r0";
    for (auto label : sweep_labels(disease_free)) os << ',' << to_string(label) << "_status," << to_string(label) << "_verdict";
    os << ",v_limit\n";
    for (const auto& pt : points) {
        os << format_number(pt.value) << ',' << (pt.r0 ? format_number(*pt.r0) : "");
        for (const auto& s : pt.equilibria)
            os << ',' << to_string(s.status) << ',' << (s.verdict ? std::string(to_string(*s.verdict)) : "");
        os << ',' << (pt.v_limit ? format_number(*pt.v_limit) : "") << '\n';
    }
    return os.str();
}

}  // namespace ecoepi
