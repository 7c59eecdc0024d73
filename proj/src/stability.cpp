#include "ecoepi/stability.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "ecoepi/error.hpp"

namespace ecoepi {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "stable";
        case Verdict::Unstable: return "unstable";
        case Verdict::Marginal: return "marginal";
    }
    return "?";
}

Poly char_poly(const Eigen::MatrixXd& J) {
    if (J.rows() != J.cols() || J.rows() == 0) throw Error(ErrorKind::InvalidInput, "char_poly needs a square matrix");
    if (!J.allFinite()) throw Error(ErrorKind::InvalidInput, "char_poly needs finite entries");
    const auto n = static_cast<unsigned>(J.rows());
    if (n > 16) throw Error(ErrorKind::InvalidInput, "char_poly supports at most 16x16 matrices");

    std::vector<double> minor_sums(n + 1, 0.0);
    minor_sums[0] = 1.0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        const auto size = static_cast<unsigned>(std::popcount(mask));
        std::vector<Eigen::Index> idx;
        for (unsigned i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(static_cast<Eigen::Index>(i));
        Eigen::MatrixXd sub(size, size);
        for (unsigned a = 0; a < size; ++a)
            for (unsigned b = 0; b < size; ++b) sub(a, b) = J(idx[a], idx[b]);
        minor_sums[size] += sub.determinant();
    }
    // det(lambda I - J) = sum_j (-1)^j E_j lambda^(n-j)
    std::vector<double> asc(n + 1, 0.0);
    for (unsigned j = 0; j <= n; ++j) asc[n - j] = ((j % 2) ? -1.0 : 1.0) * minor_sums[j];
    return Poly(std::move(asc));
}

namespace {

Verdict combine(const std::vector<Condition>& ledger) {
    bool marginal = false;
    for (const auto& c : ledger) {
        if (c.value < -kMarginalBand) return Verdict::Unstable;
        if (c.value <= kMarginalBand) marginal = true;
    }
    return marginal ? Verdict::Marginal : Verdict::Stable;
}

Condition cond(std::string name, double value) { return {std::move(name), value, value > kMarginalBand}; }

HurwitzResult finish(std::vector<Condition> ledger) {
    HurwitzResult out;
    out.verdict = combine(ledger);
    out.ledger = std::move(ledger);
    return out;
}

}  // namespace

HurwitzResult hurwitz_quadratic(double a1, double a2, std::string_view prefix) {
    const std::string p(prefix);
    return finish({cond(p + "1 > 0", a1), cond(p + "2 > 0", a2)});
}

HurwitzResult hurwitz_cubic(double b1, double b2, double b3, std::string_view prefix) {
    const std::string p(prefix);
    return finish({cond(p + "1 > 0", b1), cond(p + "2 > 0", b2), cond(p + "3 > 0", b3),
                   cond(p + "1*" + p + "2 > " + p + "3", b1 * b2 - b3)});
}

HurwitzResult hurwitz_quartic(double d1, double d2, double d3, double d4, std::string_view prefix) {
    const std::string p(prefix);
    return finish({cond(p + "1 > 0", d1), cond(p + "2 > 0", d2), cond(p + "3 > 0", d3), cond(p + "4 > 0", d4),
                   cond(p + "1*" + p + "2 > " + p + "3", d1 * d2 - d3),
                   cond(p + "1(" + p + "2*" + p + "3 - " + p + "1*" + p + "4) - " + p + "3^2 > 0",
                        d1 * (d2 * d3 - d1 * d4) - d3 * d3)});
}

Verdict spectrum_verdict(const std::vector<std::complex<double>>& eigenvalues) {
    bool marginal = false;
    for (const auto& z : eigenvalues) {
        if (z.real() > kMarginalBand) return Verdict::Unstable;
        if (z.real() >= -kMarginalBand) marginal = true;
    }
    return marginal ? Verdict::Marginal : Verdict::Stable;
}

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& J) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(J, false);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::ConsistencyFailure, "eigensolver did not converge");
    std::vector<std::complex<double>> out(solver.eigenvalues().begin(), solver.eigenvalues().end());
    std::sort(out.begin(), out.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

Eigen::MatrixXd jacobian_at(const ModelParams& p, const Equilibrium& eq) {
    if (is_reduced(eq.label)) return jacobian_reduced(p, eq.reduced_point());
    return jacobian_full(p, eq.point);
}

namespace {

struct Split {
    std::vector<std::pair<int, std::string>> factors;  // decoupled row/column and its name
    char prefix = 'A';
};

Split split_for(EquilibriumLabel label) {
    switch (label) {
        case EquilibriumLabel::E0: return {{{3, "-d4"}, {1, "-(c + d2 + m2)"}}, 'A'};
        case EquilibriumLabel::E1:
            return {{{1, "lambda1 = beta S1 + sigma V1 - c - d2 - m2"}, {3, "lambda2 = p1 q1 S1 + p3 q3 V1 - d4"}},
                    'A'};
        case EquilibriumLabel::E2: return {{{1, "a22 = beta S2 + sigma V2 - p2 P2 - c - d2 - m2"}}, 'B'};
        case EquilibriumLabel::E4: return {{{3, "b44 = q1 p1 S4 + q2 p2 I4 + q3 p3 V4 - d4"}}, 'C'};
        case EquilibriumLabel::E5: return {{}, 'D'};
        case EquilibriumLabel::DF0: return {{{2, "-d4"}}, 'A'};
        case EquilibriumLabel::DF1: return {{{2, "p1 q1 S1 + p3 q3 V1 - d4"}}, 'A'};
        case EquilibriumLabel::DF2: return {{}, 'B'};
        case EquilibriumLabel::E3: break;
    }
    throw Error(ErrorKind::Precondition, "no stability split for this equilibrium");
}

}  // namespace

StabilityReport classify(const ModelParams& p, const Equilibrium& eq) {
    if (!eq.exists())
        throw Error(ErrorKind::Precondition, "cannot classify " + std::string(to_string(eq.label)) + ": it does not exist");

    const Split split = split_for(eq.label);
    const Eigen::MatrixXd J = jacobian_at(p, eq);
    const auto n = static_cast<int>(J.rows());

    StabilityReport rep;
    rep.label = eq.label;
    rep.char_coeffs = char_poly(J).coeffs();
    rep.eigenvalues = eigenvalues(J);
    rep.eigen_verdict = spectrum_verdict(rep.eigenvalues);

    std::vector<Condition> ledger;
    std::vector<int> keep;
    for (int i = 0; i < n; ++i) {
        const bool removed = std::any_of(split.factors.begin(), split.factors.end(),
                                         [i](const auto& f) { return f.first == i; });
        if (!removed) keep.push_back(i);
    }
    const double scale = std::max(1.0, J.cwiseAbs().maxCoeff());
    for (const auto& [row, name] : split.factors) {
        for (int j = 0; j < n; ++j)
            if (j != row && std::abs(J(row, j)) > 1e-12 * scale)
                throw Error(ErrorKind::ConsistencyFailure, "row " + std::to_string(row) + " does not decouple at " +
                                                               std::string(to_string(eq.label)));
        rep.factored_eigenvalues.push_back({name, J(row, row)});
        ledger.push_back(cond(name + " < 0", -J(row, row)));
    }

    Eigen::MatrixXd block(keep.size(), keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = 0; b < keep.size(); ++b) block(a, b) = J(keep[a], keep[b]);
    const Poly bp = char_poly(block);
    rep.block_coeffs = bp.coeffs();

    const std::string prefix(1, split.prefix);
    const auto& c = rep.block_coeffs;  // ascending, c.back() == 1
    HurwitzResult hr;
    switch (keep.size()) {
        case 2: hr = hurwitz_quadratic(c[1], c[0], prefix); break;
        case 3: hr = hurwitz_cubic(c[2], c[1], c[0], prefix); break;
        case 4: hr = hurwitz_quartic(c[3], c[2], c[1], c[0], prefix); break;
        default: throw Error(ErrorKind::ConsistencyFailure, "unexpected block size");
    }
    ledger.insert(ledger.end(), hr.ledger.begin(), hr.ledger.end());
    rep.hurwitz_verdict = combine(ledger);
    rep.hurwitz_conditions = std::move(ledger);

    if (rep.hurwitz_verdict != rep.eigen_verdict)
        throw Error(ErrorKind::ConsistencyFailure,
                    "Routh-Hurwitz verdict (" + std::string(to_string(rep.hurwitz_verdict)) +
                        ") disagrees with the spectrum (" + std::string(to_string(rep.eigen_verdict)) + ") at " +
                        std::string(to_string(eq.label)));
    rep.verdict = rep.eigen_verdict;
    return rep;
}

R0Result r0(const ModelParams& p) {
    const double bracket = disease_free_bracket(p);
    if (!(bracket > kEpsilonPositive))
        throw Error(ErrorKind::UndefinedR0, "R0 is undefined: the disease-free equilibrium does not exist");
    const double loss = p.c + p.m2 + p.d2;
    if (!(loss > 0.0)) throw Error(ErrorKind::ZeroDenominator, "R0 needs c + m2 + d2 > 0");

    R0Result out;
    out.S1 = p.k / p.r * bracket;
    out.V1 = p.phi * out.S1 / (p.theta + p.m3 + p.d3);
    out.value = (p.beta * out.S1 + p.sigma * out.V1) / loss;
    out.endemic = out.value > 1.0;
    return out;
}

}  // namespace ecoepi
