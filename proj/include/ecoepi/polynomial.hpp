#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace ecoepi {

/// Real polynomial, coefficients in ascending degree.
class Poly {
public:
    /// Trailing coefficients below 1e-12 * max|c| are trimmed. Throws
    /// Error(InvalidInput) on an empty or non-finite coefficient list.
    explicit Poly(std::vector<double> ascending);

    const std::vector<double>& coeffs() const { return coeffs_; }
    std::size_t degree() const { return coeffs_.size() - 1; }
    double leading() const { return coeffs_.back(); }
    double max_abs_coeff() const;

    double operator()(double x) const;
    std::complex<double> operator()(std::complex<double> x) const;

    /// Same roots, leading coefficient 1.
    Poly monic() const;

private:
    std::vector<double> coeffs_;
};

/// Below this a real part counts as zero for positivity decisions.
inline constexpr double kEpsilonPositive = 1e-9;

struct RootSet {
    std::vector<std::complex<double>> roots;  // with multiplicity
    std::vector<double> real_roots;           // ascending
    std::vector<double> positive_real_roots;  // real part > kEpsilonPositive, ascending
    std::vector<double> degenerate_roots;     // real, |x| <= kEpsilonPositive
};

/// All complex roots from the companion-matrix spectrum, Newton-polished on
/// the original coefficients and residual-checked.
/// Throws Error(NoRoots) for a constant polynomial, Error(ConsistencyFailure)
/// if a root fails the residual check.
RootSet roots(const Poly& p);

using ScalarFunction = std::function<double(double)>;

/// Unique degree <= 3 interpolant through (node, f(node)). `verify_at` (or a
/// node past the largest one) must reproduce f to 1e-6 relative, otherwise
/// Error(DegreeMismatch): f was not a cubic. Nearly coincident nodes give
/// Error(IllConditioned).
Poly recover_cubic(const ScalarFunction& f, const std::array<double, 4>& nodes,
                   std::optional<double> verify_at = std::nullopt);

/// Sign-change scan over `panels` equal subintervals of [lo, hi], each
/// bracket bisected to width < 1e-12 (1 + |root|). Panels whose closed
/// interval contains one of `poles` are skipped. No sign change is not an
/// error: the result is just empty.
std::vector<double> bracket_roots(const ScalarFunction& f, double lo, double hi, int panels,
                                  std::span<const double> poles = {});

}  // namespace ecoepi
