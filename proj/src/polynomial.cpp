#include "ecoepi/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "ecoepi/error.hpp"

namespace ecoepi {

Poly::Poly(std::vector<double> ascending) : coeffs_(std::move(ascending)) {
    if (coeffs_.empty()) throw Error(ErrorKind::InvalidInput, "polynomial needs at least one coefficient");
    for (double c : coeffs_)
        if (!std::isfinite(c)) throw Error(ErrorKind::InvalidInput, "non-finite polynomial coefficient");
    const double scale = max_abs_coeff();
    while (coeffs_.size() > 1 && std::abs(coeffs_.back()) <= 1e-12 * scale) coeffs_.pop_back();
}

double Poly::max_abs_coeff() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

double Poly::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::complex<double> Poly::operator()(std::complex<double> x) const {
    std::complex<double> acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::monic() const {
    std::vector<double> c = coeffs_;
    const double lead = c.back();
    for (double& v : c) v /= lead;
    c.back() = 1.0;
    return Poly(std::move(c));
}

namespace {

std::complex<double> derivative_at(const Poly& p, std::complex<double> x) {
    const auto& c = p.coeffs();
    std::complex<double> acc = 0.0;
    for (std::size_t i = c.size() - 1; i >= 1; --i) acc = acc * x + static_cast<double>(i) * c[i];
    return acc;
}

std::complex<double> polish(const Poly& p, std::complex<double> z) {
    for (int it = 0; it < 8; ++it) {
        const auto fz = p(z);
        const auto dz = derivative_at(p, z);
        if (std::abs(dz) == 0.0) break;
        const auto next = z - fz / dz;
        // keep the step only if it improves the residual (multiple roots stall)
        if (std::abs(p(next)) >= std::abs(fz)) break;
        z = next;
    }
    return z;
}

}  // namespace

RootSet roots(const Poly& p) {
    const std::size_t n = p.degree();
    if (n == 0) throw Error(ErrorKind::NoRoots, "constant polynomial has no roots");

    const Poly m = p.monic();
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 1; i < n; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -m.coeffs()[i];

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::ConsistencyFailure, "companion eigensolver failed");

    RootSet out;
    const double scale = m.max_abs_coeff();
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        std::complex<double> z = polish(m, solver.eigenvalues()[i]);
        const double mag = std::max(1.0, std::pow(std::abs(z), static_cast<double>(n)));
        // Residual bound scaled by conditioning; multiple roots only reach sqrt(eps).
        if (std::abs(m(z)) > 1e-8 * scale * mag)
            throw Error(ErrorKind::ConsistencyFailure, "polynomial root failed residual check");
        out.roots.push_back(z);
    }
    std::sort(out.roots.begin(), out.roots.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    for (const auto& z : out.roots) {
        if (std::abs(z.imag()) >= 1e-9 * (1.0 + std::abs(z.real()))) continue;
        const double x = z.real();
        out.real_roots.push_back(x);
        if (x > kEpsilonPositive)
            out.positive_real_roots.push_back(x);
        else if (x >= -kEpsilonPositive)
            out.degenerate_roots.push_back(x);
    }
    return out;
}

Poly recover_cubic(const ScalarFunction& f, const std::array<double, 4>& nodes, std::optional<double> verify_at) {
    double span_lo = nodes[0], span_hi = nodes[0];
    for (double x : nodes) {
        if (!std::isfinite(x)) throw Error(ErrorKind::InvalidInput, "non-finite interpolation node");
        span_lo = std::min(span_lo, x);
        span_hi = std::max(span_hi, x);
    }
    const double width = span_hi - span_lo;
    const double node_scale = std::max({1.0, std::abs(span_lo), std::abs(span_hi)});
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (std::abs(nodes[i] - nodes[j]) <= 1e-8 * node_scale)
                throw Error(ErrorKind::IllConditioned, "interpolation nodes are not distinct");

    // Solve in a centred, scaled variable t = (x - mid) / half so the
    // Vandermonde system stays well conditioned, then map back.
    const double mid = 0.5 * (span_lo + span_hi);
    const double half = 0.5 * width;
    Eigen::Matrix4d A;
    Eigen::Vector4d b;
    double value_scale = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double t = (nodes[static_cast<std::size_t>(i)] - mid) / half;
        A(i, 0) = 1.0;
        A(i, 1) = t;
        A(i, 2) = t * t;
        A(i, 3) = t * t * t;
        b(i) = f(nodes[static_cast<std::size_t>(i)]);
        if (!std::isfinite(b(i))) throw Error(ErrorKind::InvalidInput, "function is not finite at a node");
        value_scale = std::max(value_scale, std::abs(b(i)));
    }
    const auto lu = A.fullPivLu();
    if (lu.rcond() < 1e-12) throw Error(ErrorKind::IllConditioned, "interpolation nodes are ill-conditioned");
    const Eigen::Vector4d a = lu.solve(b);

    // x = mid + half t  =>  t = (x - mid)/half ; expand sum a_j ((x - mid)/half)^j
    std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};
    const double u = 1.0 / half;
    const double v = -mid / half;  // t = u x + v
    // powers of (u x + v): binomial expansion
    const double binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i <= j; ++i) c[static_cast<std::size_t>(i)] += a(j) * binom[j][i] * std::pow(u, i) * std::pow(v, j - i);

    const Poly result(std::vector<double>(c.begin(), c.end()));
    const double xv = verify_at.value_or(span_hi + 0.37 * width);
    const double fv = f(xv);
    if (!std::isfinite(fv)) throw Error(ErrorKind::InvalidInput, "function is not finite at the verification node");
    value_scale = std::max(value_scale, std::abs(fv));
    if (std::abs(result(xv) - fv) > 1e-6 * value_scale)
        throw Error(ErrorKind::DegreeMismatch, "function is not a cubic on the sampled nodes");
    return result;
}

std::vector<double> bracket_roots(const ScalarFunction& f, double lo, double hi, int panels,
                                  std::span<const double> poles) {
    if (!(lo < hi)) throw Error(ErrorKind::InvalidInput, "bracket_roots needs lo < hi");
    if (panels < 1) throw Error(ErrorKind::InvalidInput, "bracket_roots needs at least one panel");

    std::vector<double> out;
    const double width = (hi - lo) / panels;
    auto add = [&out](double x) {
        if (out.empty() || std::abs(out.back() - x) > 1e-10 * (1.0 + std::abs(x))) out.push_back(x);
    };

    double a = lo;
    double fa = f(a);
    for (int i = 0; i < panels; ++i) {
        const double b = (i + 1 == panels) ? hi : lo + (i + 1) * width;
        const bool has_pole =
            std::any_of(poles.begin(), poles.end(), [&](double pole) { return pole >= a && pole <= b; });
        const double fb = has_pole ? std::numeric_limits<double>::quiet_NaN() : f(b);
        if (!has_pole) {
            if (fa == 0.0) add(a);
            if (std::isfinite(fa) && std::isfinite(fb) && (fa < 0.0) != (fb < 0.0) && fb != 0.0 && fa != 0.0) {
                double x0 = a, x1 = b, f0 = fa;
                while (std::abs(x1 - x0) >= 1e-12 * (1.0 + std::abs(x0))) {
                    const double xm = 0.5 * (x0 + x1);
                    if (xm == x0 || xm == x1) break;
                    const double fm = f(xm);
                    if (fm == 0.0) {
                        x0 = x1 = xm;
                        break;
                    }
                    if ((fm < 0.0) == (f0 < 0.0)) {
                        x0 = xm;
                        f0 = fm;
                    } else {
                        x1 = xm;
                    }
                }
                add(0.5 * (x0 + x1));
            }
            if (i + 1 == panels && fb == 0.0) add(b);
        }
        a = b;
        fa = has_pole ? f(b) : fb;
    }
    return out;
}

}  // namespace ecoepi
