#include "ecoepi/params.hpp"

#include <cmath>

#include "ecoepi/error.hpp"

namespace ecoepi {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidParams: return "invalid_params";
        case ErrorKind::InvalidState: return "invalid_state";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::InvalidInput: return "invalid_input";
        case ErrorKind::NoRoots: return "no_roots";
        case ErrorKind::DegreeMismatch: return "degree_mismatch";
        case ErrorKind::IllConditioned: return "ill_conditioned";
        case ErrorKind::ZeroDenominator: return "zero_denominator";
        case ErrorKind::UndefinedR0: return "undefined_r0";
        case ErrorKind::Precondition: return "precondition";
        case ErrorKind::ConsistencyFailure: return "consistency_failure";
        case ErrorKind::IntegrationFailure: return "integration_failure";
        case ErrorKind::Config: return "config";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

namespace {

using Member = double ModelParams::*;

struct KeyEntry {
    std::string_view key;
    Member member;
};

constexpr std::array<KeyEntry, kParamCount> kTable{{
    {"r", &ModelParams::r},         {"k", &ModelParams::k},
    {"beta", &ModelParams::beta},   {"sigma", &ModelParams::sigma},
    {"phi", &ModelParams::phi},     {"theta", &ModelParams::theta},
    {"p1", &ModelParams::p1},       {"p2", &ModelParams::p2},
    {"p3", &ModelParams::p3},       {"q1", &ModelParams::q1},
    {"q2", &ModelParams::q2},       {"q3", &ModelParams::q3},
    {"m1", &ModelParams::m1},       {"m2", &ModelParams::m2},
    {"m3", &ModelParams::m3},       {"d1", &ModelParams::d1},
    {"d2", &ModelParams::d2},       {"d3", &ModelParams::d3},
    {"d4", &ModelParams::d4},       {"c", &ModelParams::c},
}};

const KeyEntry* find(std::string_view key) {
    for (const auto& e : kTable)
        if (e.key == key) return &e;
    return nullptr;
}

}  // namespace

const std::array<std::string_view, kParamCount>& param_keys() {
    static const auto keys = [] {
        std::array<std::string_view, kParamCount> out{};
        for (std::size_t i = 0; i < kTable.size(); ++i) out[i] = kTable[i].key;
        return out;
    }();
    return keys;
}

std::optional<double> get_param(const ModelParams& p, std::string_view key) {
    if (const auto* e = find(key)) return p.*(e->member);
    return std::nullopt;
}

bool set_param(ModelParams& p, std::string_view key, double value) {
    if (const auto* e = find(key)) {
        p.*(e->member) = value;
        return true;
    }
    return false;
}

void validate(const ModelParams& p, ValidationOptions opts) {
    for (const auto& e : kTable) {
        const double v = p.*(e.member);
        if (!std::isfinite(v))
            throw Error(ErrorKind::InvalidParams, "parameter '" + std::string(e.key) + "' is not finite");
        if (v < 0.0)
            throw Error(ErrorKind::InvalidParams, "parameter '" + std::string(e.key) + "' is negative");
    }
    if (!(p.r > 0.0)) throw Error(ErrorKind::InvalidParams, "parameter 'r' must be positive");
    if (!(p.k > 0.0)) throw Error(ErrorKind::InvalidParams, "parameter 'k' must be positive");
    if (!opts.allow_conversion_ge_one) {
        for (auto [key, v] : {std::pair{"q1", p.q1}, std::pair{"q2", p.q2}, std::pair{"q3", p.q3}}) {
            if (v >= 1.0)
                throw Error(ErrorKind::InvalidParams,
                            std::string("parameter '") + key + "' must be < 1 (override to allow)");
        }
    }
}

std::vector<std::string> lint(const ModelParams& p) {
    std::vector<std::string> out;
    if (!(p.p2 > p.p1)) out.emplace_back("p2 <= p1: infected prey are not easier to catch than healthy prey");
    if (p.sigma > p.beta) out.emplace_back("sigma > beta: vaccinated prey are infected faster than susceptible prey");
    for (auto [key, v] : {std::pair{"q1", p.q1}, std::pair{"q2", p.q2}, std::pair{"q3", p.q3}})
        if (v >= 1.0) out.emplace_back(std::string(key) + " >= 1: boundedness bound does not apply");
    return out;
}

namespace presets {

ModelParams base_set() {
    ModelParams p;
    p.r = 1.1;
    p.k = 2.9;
    p.beta = 1.2;
    p.phi = 1.2;
    p.theta = 1.2;
    p.sigma = 0.2;
    p.c = 0.35;
    p.p1 = p.p2 = p.p3 = 0.125;
    p.q1 = 0.75;
    p.q2 = 0.8;
    p.q3 = 0.75;
    p.d1 = 0.25;
    p.d2 = 0.125;
    p.d3 = 0.1;
    p.d4 = 0.25;
    return p;
}

ModelParams disease_free_system() { return base_set(); }

ModelParams case_i() {
    ModelParams p = base_set();
    p.p1 = 0.1;
    p.p3 = 0.1;
    return p;
}

ModelParams case_ii() {
    ModelParams p = case_i();
    p.m1 = 0.25;
    p.m2 = 0.125;
    p.m3 = 0.25;
    return p;
}

}  // namespace presets

}  // namespace ecoepi
