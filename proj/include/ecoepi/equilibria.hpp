#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecoepi/model.hpp"
#include "ecoepi/params.hpp"
#include "ecoepi/polynomial.hpp"

namespace ecoepi {

/// E0..E5 belong to the full model, DF0..DF2 (printed "E^0".."E^2") to the
/// disease-free reduced model.
enum class EquilibriumLabel { E0, E1, E2, E3, E4, E5, DF0, DF1, DF2 };

std::string_view to_string(EquilibriumLabel label);
std::optional<EquilibriumLabel> label_from_string(std::string_view s);
bool is_reduced(EquilibriumLabel label);

enum class Existence { Exists, FailsCondition, NoPositiveRoot, Degenerate };

std::string_view to_string(Existence e);

struct Equilibrium {
    EquilibriumLabel label = EquilibriumLabel::E0;
    /// Reduced-model points are stored embedded (I = 0).
    FullState point;
    Existence status = Existence::Exists;
    std::vector<std::string> notes;
    /// Max-norm of the right-hand side at `point` (unchecked evaluation, so
    /// infeasible points such as E3 still get a residual).
    double residual = 0.0;

    bool exists() const { return status == Existence::Exists; }
    ReducedState reduced_point() const { return {point.S, point.V, point.P}; }
};

/// Candidates for an equilibrium family defined through a polynomial root.
/// `candidates` holds one entry per positive root (ascending); it is empty
/// when the polynomial has no positive root.
struct RootedFamily {
    std::optional<Poly> cubic;  // monic
    RootSet roots;
    std::vector<Equilibrium> candidates;

    /// Exists if any candidate exists, else the first candidate's status, else NoPositiveRoot.
    Existence status() const;
};

/// Residual of the full (or reduced, for DF labels) right-hand side.
double equilibrium_residual(const ModelParams& p, EquilibriumLabel label, const FullState& x);

Equilibrium eq_trivial(bool reduced = false);

/// Existence bracket r - phi - m1 - d1 + theta phi / (theta + m3 + d3);
/// S1 = (k/r) * bracket and V1 = phi S1 / (theta + m3 + d3).
double disease_free_bracket(const ModelParams& p);

/// E1 = (S1, 0, V1, 0), or E^1 = (S1, V1, 0) when `reduced`.
Equilibrium eq_disease_free(const ModelParams& p, bool reduced = false);

/// Left side of the P2 equation (a cubic in P2).
double e2_polynomial(const ModelParams& p, double P2);
/// E2 = (S2, 0, V2, P2), or E^2 when `reduced`. Requires p1 q1 > 0.
RootedFamily eq_e2(const ModelParams& p, bool reduced = false);

/// Always fails: P3 = -(c + d2 + m2) / p2 is negative.
Equilibrium eq_e3(const ModelParams& p);

/// g(I4): rational function whose positive zeros give E4.
double e4_function(const ModelParams& p, double I4);
/// g(I4) times its denominator sigma phi + beta(theta + d3 + m3 + sigma I4): a cubic.
double e4_cleared(const ModelParams& p, double I4);
/// Zero of the denominator of g, if any.
std::optional<double> e4_pole(const ModelParams& p);

struct E4Family : RootedFamily {
    /// Positive zeros of g found by sign-change scanning on [0, 10k].
    std::vector<double> bracket_roots;
};
E4Family eq_e4(const ModelParams& p);

/// h(S5), a cubic whose positive zeros give candidate E5 points.
double e5_polynomial(const ModelParams& p, double S5);
/// V5 = numer / denom as functions of S5.
struct E5Ratio {
    double numer = 0.0;
    double denom = 0.0;
};
E5Ratio e5_ratio(const ModelParams& p, double S5);
/// Requires p2 q2 > 0.
RootedFamily eq_e5(const ModelParams& p);

/// Equilibria of the reduced model: E^0, E^1 and every E^2 candidate.
std::vector<Equilibrium> eq_reduced(const ModelParams& p);

/// Every equilibrium of the full model, followed by the reduced-model ones
/// when `include_reduced`. Families without a positive root contribute a
/// single NoPositiveRoot record so every label is present.
std::vector<Equilibrium> eq_all(const ModelParams& p, bool include_reduced = false);

}  // namespace ecoepi
