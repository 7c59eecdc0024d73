#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ecoepi/equilibria.hpp"
#include "ecoepi/params.hpp"
#include "ecoepi/polynomial.hpp"

namespace ecoepi {

enum class Verdict { Stable, Unstable, Marginal };

std::string_view to_string(Verdict v);

/// Margin band for eigenvalue real parts and Routh-Hurwitz inequalities.
inline constexpr double kMarginalBand = 1e-9;

/// Monic characteristic polynomial det(lambda I - J) from sums of principal
/// minors: the coefficient of lambda^(n-j) is (-1)^j times the sum of all
/// j x j principal minors. Throws Error(InvalidInput) for non-square or
/// non-finite input.
Poly char_poly(const Eigen::MatrixXd& J);

struct Condition {
    std::string name;
    double value = 0.0;  // left side minus right side; holds when > 0
    bool holds = false;
};

struct HurwitzResult {
    Verdict verdict = Verdict::Marginal;
    std::vector<Condition> ledger;
};

/// Routh-Hurwitz for lambda^2 + a1 lambda + a2.
/// `prefix` names the coefficients in the ledger ("A1 > 0", ...).
HurwitzResult hurwitz_quadratic(double a1, double a2, std::string_view prefix = "A");
/// lambda^3 + b1 lambda^2 + b2 lambda + b3: b1, b2, b3 > 0 and b1 b2 > b3.
HurwitzResult hurwitz_cubic(double b1, double b2, double b3, std::string_view prefix = "B");
/// lambda^4 + d1 lambda^3 + ... + d4: all di > 0, d1 d2 > d3 and
/// d1 (d2 d3 - d1 d4) - d3^2 > 0.
HurwitzResult hurwitz_quartic(double d1, double d2, double d3, double d4, std::string_view prefix = "D");

/// Sign test on a spectrum with the marginal band.
Verdict spectrum_verdict(const std::vector<std::complex<double>>& eigenvalues);

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& J);

struct FactorEigenvalue {
    std::string name;
    double value = 0.0;
};

struct StabilityReport {
    EquilibriumLabel label = EquilibriumLabel::E0;
    std::vector<double> char_coeffs;   // full Jacobian, ascending, monic
    std::vector<double> block_coeffs;  // residual block after splitting off factors, ascending, monic
    std::vector<FactorEigenvalue> factored_eigenvalues;
    std::vector<Condition> hurwitz_conditions;
    std::vector<std::complex<double>> eigenvalues;
    Verdict hurwitz_verdict = Verdict::Marginal;
    Verdict eigen_verdict = Verdict::Marginal;
    Verdict verdict = Verdict::Marginal;
};

/// Jacobian at the equilibrium (full 4x4 or reduced 3x3 by label).
Eigen::MatrixXd jacobian_at(const ModelParams& p, const Equilibrium& eq);

/// Splits off the rows that decouple at the equilibrium (e.g. the I and P
/// rows at E1), applies Routh-Hurwitz to what is left, and cross-checks the
/// verdict against the eigenvalues of the full Jacobian.
/// Throws Error(Precondition) if the equilibrium does not exist and
/// Error(ConsistencyFailure) if the two verdicts disagree.
StabilityReport classify(const ModelParams& p, const Equilibrium& eq);

struct R0Result {
    double value = 0.0;
    double S1 = 0.0;
    double V1 = 0.0;
    bool endemic = false;
};

/// R0 = (beta S1 + sigma V1) / (c + m2 + d2) at the disease-free equilibrium.
/// Throws Error(UndefinedR0) if E1 does not exist and Error(ZeroDenominator)
/// if c + m2 + d2 = 0.
R0Result r0(const ModelParams& p);

}  // namespace ecoepi
