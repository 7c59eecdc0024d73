#include "ecoepi/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ecoepi/error.hpp"

namespace ecoepi {

namespace {

constexpr double kEps = kEpsilonPositive;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(9);
    os << v;
    return os.str();
}

/// Folds one existence inequality (value > 0) into the running status.
void require_positive(Existence& status, std::vector<std::string>& notes, double value, const std::string& what) {
    if (value > kEps) return;
    if (value >= -kEps) {
        notes.push_back(what + " is on the boundary (" + fmt(value) + ")");
        if (status == Existence::Exists) status = Existence::Degenerate;
    } else {
        notes.push_back(what + " fails (" + fmt(value) + ")");
        status = Existence::FailsCondition;
    }
}

/// Residual gate for anything reported as existing.
void verify_residual(const ModelParams& p, Equilibrium& e) {
    e.residual = equilibrium_residual(p, e.label, e.point);
    if (!e.exists()) return;
    double biggest = 0.0;
    for (double x : e.point.to_array()) biggest = std::max(biggest, std::abs(x));
    if (!(e.residual < 1e-6 * (1.0 + biggest))) {
        e.status = Existence::FailsCondition;
        e.notes.push_back("right-hand side residual " + fmt(e.residual) + " too large");
    }
}

std::array<double, 4> scaled_nodes(double k) {
    const double s = std::max(k, 1e-3) / 3.0;
    return {0.0, s, 2.0 * s, 3.0 * s};
}

}  // namespace

std::string_view to_string(EquilibriumLabel label) {
    switch (label) {
        case EquilibriumLabel::E0: return "E0";
        case EquilibriumLabel::E1: return "E1";
        case EquilibriumLabel::E2: return "E2";
        case EquilibriumLabel::E3: return "E3";
        case EquilibriumLabel::E4: return "E4";
        case EquilibriumLabel::E5: return "E5";
        case EquilibriumLabel::DF0: return "E^0";
        case EquilibriumLabel::DF1: return "E^1";
        case EquilibriumLabel::DF2: return "E^2";
    }
    return "?";
}

std::optional<EquilibriumLabel> label_from_string(std::string_view s) {
    for (auto l : {EquilibriumLabel::E0, EquilibriumLabel::E1, EquilibriumLabel::E2, EquilibriumLabel::E3,
                   EquilibriumLabel::E4, EquilibriumLabel::E5, EquilibriumLabel::DF0, EquilibriumLabel::DF1,
                   EquilibriumLabel::DF2})
        if (to_string(l) == s) return l;
    return std::nullopt;
}

bool is_reduced(EquilibriumLabel label) {
    return label == EquilibriumLabel::DF0 || label == EquilibriumLabel::DF1 || label == EquilibriumLabel::DF2;
}

std::string_view to_string(Existence e) {
    switch (e) {
        case Existence::Exists: return "exists";
        case Existence::FailsCondition: return "fails-condition";
        case Existence::NoPositiveRoot: return "no-positive-root";
        case Existence::Degenerate: return "degenerate";
    }
    return "?";
}

Existence RootedFamily::status() const {
    for (const auto& c : candidates)
        if (c.exists()) return Existence::Exists;
    if (!candidates.empty()) return candidates.front().status;
    return Existence::NoPositiveRoot;
}

double equilibrium_residual(const ModelParams& p, EquilibriumLabel label, const FullState& x) {
    double r = 0.0;
    if (is_reduced(label)) {
        for (double v : rhs_reduced_raw(p, {x.S, x.V, x.P})) r = std::max(r, std::abs(v));
    } else {
        for (double v : rhs_full_raw(p, x.to_array())) r = std::max(r, std::abs(v));
    }
    return r;
}

Equilibrium eq_trivial(bool reduced) {
    Equilibrium e;
    e.label = reduced ? EquilibriumLabel::DF0 : EquilibriumLabel::E0;
    e.point = {};
    e.status = Existence::Exists;
    e.residual = 0.0;
    return e;
}

double disease_free_bracket(const ModelParams& p) {
    const double loss = p.theta + p.m3 + p.d3;
    if (!(loss > 0.0)) throw Error(ErrorKind::ZeroDenominator, "theta + m3 + d3 must be positive");
    return p.r - p.phi - p.m1 - p.d1 + p.theta * p.phi / loss;
}

Equilibrium eq_disease_free(const ModelParams& p, bool reduced) {
    const double bracket = disease_free_bracket(p);
    const double S1 = p.k / p.r * bracket;
    const double V1 = p.phi * S1 / (p.theta + p.m3 + p.d3);

    Equilibrium e;
    e.label = reduced ? EquilibriumLabel::DF1 : EquilibriumLabel::E1;
    e.point = {S1, 0.0, V1, 0.0};
    require_positive(e.status, e.notes, bracket, "r - phi - m1 - d1 + theta phi/(theta + m3 + d3) > 0");
    verify_residual(p, e);
    return e;
}

double e2_polynomial(const ModelParams& p, double P2) {
    const double a = p.theta + p.d3 + p.m3;
    const double growth_loss = p.r * p.theta + (p.r - p.phi) * (p.d3 + p.m3) - a * (p.d1 + p.m1 + p.p1 * P2) -
                               P2 * (-p.r + p.phi + p.d1 + p.m1 + p.p1 * P2) * p.p3;
    const double vaccinated = p.p1 * (a + p.p3 * P2) * p.q1 + p.phi * p.p3 * p.q3;
    return -p.r * p.d4 * (a + p.p3 * P2) * (a + p.p3 * P2) / p.k + growth_loss * vaccinated;
}

RootedFamily eq_e2(const ModelParams& p, bool reduced) {
    const double pq1 = p.p1 * p.q1;
    if (!(pq1 > 0.0)) throw Error(ErrorKind::Precondition, "E2 needs p1 q1 > 0");

    RootedFamily fam;
    const Poly cubic = recover_cubic([&](double x) { return e2_polynomial(p, x); }, scaled_nodes(p.k));
    if (cubic.degree() == 0) return fam;  // identically constant: nothing to solve
    fam.cubic = cubic.monic();
    fam.roots = roots(*fam.cubic);

    for (double P2 : fam.roots.positive_real_roots) {
        Equilibrium e;
        e.label = reduced ? EquilibriumLabel::DF2 : EquilibriumLabel::E2;
        const double denom = pq1 * (p.theta + p.d3 + p.m3 + p.p3 * P2) + p.phi * p.p3 * p.q3;
        const double V2 = p.phi * p.d4 / denom;
        const double numer_s = p.d4 - p.p3 * p.q3 * V2;
        const double S2 = numer_s / pq1;
        e.point = {S2, 0.0, V2, P2};
        require_positive(e.status, e.notes, numer_s, "d4 - p3 q3 V2 > 0");
        require_positive(e.status, e.notes, V2, "V2 > 0");
        verify_residual(p, e);
        fam.candidates.push_back(std::move(e));
    }
    return fam;
}

Equilibrium eq_e3(const ModelParams& p) {
    if (!(p.p2 * p.q2 > 0.0) || !(p.p2 > 0.0)) throw Error(ErrorKind::Precondition, "E3 needs p2 q2 > 0");
    Equilibrium e;
    e.label = EquilibriumLabel::E3;
    const double I3 = p.d4 / (p.q2 * p.p2);
    const double P3 = -(p.c + p.d2 + p.m2) / p.p2;
    e.point = {0.0, I3, 0.0, P3};
    require_positive(e.status, e.notes, P3, "P3 = -(c + d2 + m2)/p2 > 0");
    if (e.status == Existence::FailsCondition) e.notes.emplace_back("predator density would be negative");
    verify_residual(p, e);
    return e;
}

double e4_function(const ModelParams& p, double I4) {
    const double a = p.theta + p.d3 + p.m3 + p.sigma * I4;
    const double denom = p.sigma * p.phi + p.beta * a;
    const double S4 = (p.c + p.d2 + p.m2) * a / denom;
    return p.theta * p.phi - a * (p.phi + p.d1 + p.m1 + p.beta * I4 - p.r / p.k * (p.k - I4 - S4));
}

double e4_cleared(const ModelParams& p, double I4) {
    const double a = p.theta + p.d3 + p.m3 + p.sigma * I4;
    const double denom = p.sigma * p.phi + p.beta * a;
    const double lin = p.phi + p.d1 + p.m1 + p.beta * I4 - p.r + p.r * I4 / p.k;
    return p.theta * p.phi * denom - a * (lin * denom + p.r / p.k * (p.c + p.d2 + p.m2) * a);
}

std::optional<double> e4_pole(const ModelParams& p) {
    const double slope = p.beta * p.sigma;
    if (slope == 0.0) return std::nullopt;
    return -(p.sigma * p.phi + p.beta * (p.theta + p.d3 + p.m3)) / slope;
}

E4Family eq_e4(const ModelParams& p) {
    E4Family fam;
    if (p.beta == 0.0 && p.sigma == 0.0) return fam;  // no transmission, dI/dt < 0 whenever I > 0

    const Poly cubic = recover_cubic([&](double x) { return e4_cleared(p, x); }, scaled_nodes(p.k));
    if (cubic.degree() == 0) return fam;
    fam.cubic = cubic.monic();
    fam.roots = roots(*fam.cubic);

    const auto pole = e4_pole(p);
    std::vector<double> poles;
    if (pole) poles.push_back(*pole);
    fam.bracket_roots = bracket_roots([&](double x) { return e4_function(p, x); }, 0.0, 10.0 * p.k, 4000, poles);
    fam.bracket_roots.erase(std::remove_if(fam.bracket_roots.begin(), fam.bracket_roots.end(),
                                           [](double x) { return !(x > kEps); }),
                            fam.bracket_roots.end());

    for (double I4 : fam.roots.positive_real_roots) {
        const double a = p.theta + p.d3 + p.m3 + p.sigma * I4;
        const double denom = p.sigma * p.phi + p.beta * a;
        if (std::abs(denom) < 1e-12) continue;  // spurious root introduced by clearing the pole

        Equilibrium e;
        e.label = EquilibriumLabel::E4;
        double root = I4;
        const auto match = std::find_if(fam.bracket_roots.begin(), fam.bracket_roots.end(),
                                        [&](double b) { return std::abs(b - I4) <= 1e-6 * (1.0 + I4); });
        if (match != fam.bracket_roots.end())
            root = *match;
        else
            e.notes.emplace_back("no sign change of g near this root (tangent root or outside [0, 10k])");

        const double S4 = (p.c + p.d2 + p.m2) * (p.theta + p.d3 + p.m3 + p.sigma * root) /
                          (p.sigma * p.phi + p.beta * (p.theta + p.d3 + p.m3 + p.sigma * root));
        const double V4 = p.phi * (p.c + p.d2 + p.m2) /
                          (p.sigma * p.phi + p.beta * (p.theta + p.d3 + p.m3 + p.sigma * root));
        e.point = {S4, root, V4, 0.0};
        require_positive(e.status, e.notes, S4, "S4 > 0");
        require_positive(e.status, e.notes, V4, "V4 > 0");
        verify_residual(p, e);
        fam.candidates.push_back(std::move(e));
    }
    return fam;
}

double e5_polynomial(const ModelParams& p, double S) {
    const double r = p.r, k = p.k, b = p.beta, ph = p.phi, th = p.theta, s = p.sigma, c = p.c;
    const double p1 = p.p1, p2 = p.p2, p3 = p.p3, q1 = p.q1, q2 = p.q2, q3 = p.q3;
    const double d1 = p.d1, d2 = p.d2, d3 = p.d3, d4 = p.d4, m1 = p.m1, m2 = p.m2, m3 = p.m3;
    const double rkb = r + k * b;

    const double sq = k * q2 * (-s * p1 * S + th * p2) + rkb * p3 * q3 * S;
    const double first = ph * p2 * sq * sq;

    const double left = rkb * (d4 - p1 * q1 * S) +
                        q2 * (-k * p1 * (c - b * S + d2 + m2) + p2 * (r * S + k * (-r + ph) + k * (d1 + m1)));

    const double right =
        s * d4 * (-k * S * s * p1 + k * th * p2 + p3 * S * rkb) + k * S * S * s * s * p1 * p1 * q1 +
        p2 * q2 *
            (k * th * p2 * (th + d3 + m3) +
             p3 * (-c * k * th + S * (k * b * th + r * S * s + k * s * (-r + ph)) + k * S * s * (d1 + m1) -
                   k * th * (d2 + m2))) +
        S * p3 *
            ((r * th + k * b * th + k * r * s - r * S * s - k * s * ph - k * s * (d1 + m1) + r * (d3 + m3) +
              k * b * (d3 + m3)) *
                 p2 -
             rkb * (c - S * b + d2 + m2) * p3) *
            q3 +
        S * s * p1 * (k * p2 * (-th * q1 - (th + d3 + m3) * q2) + p3 * (-S * rkb * q1 + k * q3 * (c - S * b + d2 + m2)));

    return first - left * right;
}

E5Ratio e5_ratio(const ModelParams& p, double S) {
    const double r = p.r, k = p.k, b = p.beta, ph = p.phi, th = p.theta, s = p.sigma, c = p.c;
    const double p1 = p.p1, p2 = p.p2, p3 = p.p3, q1 = p.q1, q2 = p.q2, q3 = p.q3;
    const double d1 = p.d1, d2 = p.d2, d4 = p.d4, m1 = p.m1, m2 = p.m2;
    E5Ratio out;
    out.numer = r * d4 * S + k * b * d4 * S - r * p1 * q1 * S * S - k * b * p1 * q1 * S * S - c * k * p1 * q2 * S +
                k * b * p1 * q2 * S * S - k * d2 * p1 * q2 * S - k * m2 * p1 * q2 * S - k * r * p2 * q2 * S +
                r * p2 * q2 * S * S + k * ph * p2 * q2 * S + k * d1 * p2 * q2 * S + k * m1 * p2 * q2 * S;
    out.denom = -k * s * p1 * q2 * S + k * th * p2 * q2 + r * p3 * q3 * S + k * b * p3 * q3 * S;
    return out;
}

RootedFamily eq_e5(const ModelParams& p) {
    if (!(p.p2 * p.q2 > 0.0)) throw Error(ErrorKind::Precondition, "E5 needs p2 q2 > 0");

    RootedFamily fam;
    const Poly cubic = recover_cubic([&](double x) { return e5_polynomial(p, x); }, scaled_nodes(p.k));
    if (cubic.degree() == 0) return fam;
    fam.cubic = cubic.monic();
    fam.roots = roots(*fam.cubic);

    for (double S5 : fam.roots.positive_real_roots) {
        Equilibrium e;
        e.label = EquilibriumLabel::E5;
        const auto [numer, denom] = e5_ratio(p, S5);
        if (std::abs(denom) < 1e-12) {
            e.status = Existence::FailsCondition;
            e.point = {S5, 0.0, 0.0, 0.0};
            e.notes.emplace_back("singular denominator Q in V5 = P/Q");
            e.residual = equilibrium_residual(p, e.label, e.point);
            fam.candidates.push_back(std::move(e));
            continue;
        }
        const double V5 = numer / denom;
        const double predator_room = p.d4 - p.p1 * p.q1 * S5 - p.p3 * p.q3 * V5;
        const double infection_gain = p.beta * S5 + p.sigma * V5 - p.c - p.d2 - p.m2;
        e.point = {S5, predator_room / (p.p2 * p.q2), V5, infection_gain / p.p2};
        require_positive(e.status, e.notes, predator_room, "d4 - p1 q1 S5 - p3 q3 V5 > 0");
        require_positive(e.status, e.notes, infection_gain, "beta S5 + sigma V5 - c - d2 - m2 > 0");
        // V5 > 0 means P and Q share a sign; the alternative reading
        // "P > 0, Q < 0" would force V5 < 0.
        require_positive(e.status, e.notes, V5, "V5 = P/Q > 0");
        e.notes.push_back("P = " + fmt(numer) + ", Q = " + fmt(denom) + " (V5 > 0 needs equal signs)");
        verify_residual(p, e);
        fam.candidates.push_back(std::move(e));
    }
    return fam;
}

namespace {

void append_family(std::vector<Equilibrium>& out, const RootedFamily& fam, EquilibriumLabel label) {
    if (!fam.candidates.empty()) {
        out.insert(out.end(), fam.candidates.begin(), fam.candidates.end());
        return;
    }
    Equilibrium e;
    e.label = label;
    e.status = Existence::NoPositiveRoot;
    e.point = {std::nan(""), std::nan(""), std::nan(""), std::nan("")};
    e.residual = std::nan("");
    std::ostringstream os;
    os << "no positive real root; real roots:";
    for (double x : fam.roots.real_roots) os << ' ' << fmt(x);
    e.notes.push_back(os.str());
    out.push_back(std::move(e));
}

}  // namespace

std::vector<Equilibrium> eq_reduced(const ModelParams& p) {
    std::vector<Equilibrium> out;
    out.push_back(eq_trivial(true));
    out.push_back(eq_disease_free(p, true));
    append_family(out, eq_e2(p, true), EquilibriumLabel::DF2);
    return out;
}

std::vector<Equilibrium> eq_all(const ModelParams& p, bool include_reduced) {
    std::vector<Equilibrium> out;
    out.push_back(eq_trivial(false));
    out.push_back(eq_disease_free(p, false));
    append_family(out, eq_e2(p, false), EquilibriumLabel::E2);
    out.push_back(eq_e3(p));
    append_family(out, eq_e4(p), EquilibriumLabel::E4);
    append_family(out, eq_e5(p), EquilibriumLabel::E5);
    if (include_reduced) {
        auto red = eq_reduced(p);
        out.insert(out.end(), red.begin(), red.end());
    }
    return out;
}

}  // namespace ecoepi
