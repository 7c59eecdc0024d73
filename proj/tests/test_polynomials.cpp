#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "ecoepi/equilibria.hpp"
#include "ecoepi/error.hpp"
#include "ecoepi/polynomial.hpp"

using namespace ecoepi;

namespace {

void check_roots(const RootSet& rs, std::vector<double> want, double tol, bool relative = false) {
    REQUIRE(rs.real_roots.size() == want.size());
    std::sort(want.begin(), want.end());
    for (std::size_t i = 0; i < want.size(); ++i) {
        const double scale = relative ? std::abs(want[i]) : 1.0;
        CHECK(std::abs(rs.real_roots[i] - want[i]) <= tol * scale);
    }
}

void check_coeffs(const Poly& got, const std::vector<double>& want, double rel) {
    REQUIRE(got.coeffs().size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
        CHECK(std::abs(got.coeffs()[i] - want[i]) <= rel * std::abs(want[i]));
}

// Elimination oracle for the interior equilibrium. With P > 0 and I > 0 the
// predator and infected equations give I and P as affine functions of S and V.
// The S equation times k is then a0 + a1 V = 0 with a0 quadratic and a1
// linear in S, the V equation is e0 + e1 V + e2 V^2 = 0, and the resultant
// in V is
//   e0 a1^2 - e1 a0 a1 + e2 a0^2
// which vanishes exactly at the interior equilibria. It carries an extra
// factor S, divided out here.
struct Elimination {
    ModelParams p;

    // I = i0 + iS S + iV V,  P = P0 + pS S + pV V
    double i0() const { return p.d4 / (p.q2 * p.p2); }
    double iS() const { return -p.q1 * p.p1 / (p.q2 * p.p2); }
    double iV() const { return -p.q3 * p.p3 / (p.q2 * p.p2); }
    double P0() const { return -(p.c + p.d2 + p.m2) / p.p2; }
    double pS() const { return p.beta / p.p2; }
    double pV() const { return p.sigma / p.p2; }

    // k * dS = a0 + a1 V
    void a(double S, double& a0, double& a1) const {
        const double k = p.k;
        // per unit S: r k - r S - r I - k beta I - k phi + k theta V / S - k p1 P - k (m1 + d1)
        a0 = p.r * k - p.r * S - (p.r + k * p.beta) * (i0() + iS() * S) - k * p.phi - k * p.p1 * (P0() + pS() * S) -
             k * (p.m1 + p.d1);
        a1 = -(p.r + k * p.beta) * iV() + k * p.theta / S - k * p.p1 * pV();
        a0 *= S;
        a1 *= S;
    }

    // dV = phi S - V (theta + m3 + d3 + sigma I + p3 P)
    void e(double S, double& e0, double& e1, double& e2) const {
        e0 = p.phi * S;
        e1 = -(p.theta + p.m3 + p.d3 + p.sigma * (i0() + iS() * S) + p.p3 * (P0() + pS() * S));
        e2 = -(p.sigma * iV() + p.p3 * pV());
    }

    double resultant(double S) const {
        double a0, a1, e0, e1, e2;
        a(S, a0, a1);
        e(S, e0, e1, e2);
        return (e0 * a1 * a1 - e1 * a0 * a1 + e2 * a0 * a0) / S;
    }

    double v_of(double S) const {
        double a0, a1;
        a(S, a0, a1);
        return -a0 / a1;
    }
};

// Disease-present, predator-free equilibrium: with P = 0 the I and V
// equations fix S and V as functions of I; the S equation divided by S is
// then a scalar function whose zeros are the admissible I.
double e4_oracle(const ModelParams& p, double I) {
    const double A = p.c + p.d2 + p.m2;
    const double w = p.theta + p.sigma * I + p.m3 + p.d3;
    const double S = A * w / (p.beta * w + p.sigma * p.phi);
    const double V = p.phi * S / w;
    return p.r * (1.0 - (S + I) / p.k) - p.beta * I - p.phi - p.m1 - p.d1 + p.theta * V / S;
}

ModelParams synthetic_e5() {
    auto p = presets::case_i();
    p.beta = 1.8;
    p.sigma = 0.5;
    p.p1 = 0.2;
    p.p2 = 0.35;
    p.p3 = 0.05;
    p.q1 = 0.9;
    p.q2 = 0.57;
    p.q3 = 0.7;
    p.d4 = 0.11;
    return p;
}

}  // namespace

TEST_CASE("Poly trims and evaluates") {
    const Poly p({1.0, 2.0, 3.0, 1e-20});
    CHECK(p.degree() == 2);
    CHECK(p(2.0) == 17.0);
    CHECK(p.leading() == 3.0);
    CHECK(p.monic().coeffs() == std::vector<double>{1.0 / 3, 2.0 / 3, 1.0});
    CHECK(p(std::complex<double>(0, 1)) == std::complex<double>(-2.0, 2.0));
    CHECK(Poly({0.0}).degree() == 0);
    CHECK_THROWS_AS(Poly({}), Error);
    CHECK_THROWS_AS(Poly({1.0, NAN}), Error);
}

TEST_CASE("roots of small polynomials") {
    check_roots(roots(Poly({-1.0, 0.0, 1.0})), {-1.0, 1.0}, 1e-14);
    const auto rs = roots(Poly({-1.0, 0.0, 1.0}));
    CHECK(rs.positive_real_roots == std::vector<double>{1.0});

    // x^2 + 1: complex pair only
    const auto c = roots(Poly({1.0, 0.0, 1.0}));
    CHECK(c.roots.size() == 2);
    CHECK(c.real_roots.empty());

    // a root at zero is degenerate, not positive
    const auto z = roots(Poly({0.0, -1.0, 1.0}));
    CHECK(z.degenerate_roots.size() == 1);
    CHECK(z.positive_real_roots == std::vector<double>{1.0});

    try {
        roots(Poly({3.0}));
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoRoots);
    }
}

TEST_CASE("reference cubics") {
    check_roots(roots(Poly({38.4457, 54.1917, 18.4888, 1.0})), {-15.06, -2.33611, -1.09277}, 2e-3);
    check_roots(roots(Poly({1635.14, 932.204, 61.6437, 1.0})), {-38.5785, -21.0518, -2.01336}, 2e-3);
    check_roots(roots(Poly({46.1203, 62.1861, 19.6443, 1.0})), {-15.9202, -2.6173, -1.10686}, 2e-3);
}

TEST_CASE("root residuals on random polynomials") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_int_distribution<int> deg(1, 8);
    for (int t = 0; t < 500; ++t) {
        std::vector<double> c(static_cast<std::size_t>(deg(rng) + 1));
        for (auto& x : c) x = n(rng);
        c.back() = (c.back() >= 0 ? 1.0 : -1.0) * (0.1 + std::abs(c.back()));
        const Poly p(c);
        const auto rs = roots(p);
        CHECK(rs.roots.size() == p.degree());
        for (const auto& z : rs.roots) {
            const double scale = p.max_abs_coeff() * std::max(1.0, std::pow(std::abs(z), double(p.degree())));
            CHECK(std::abs(p(z)) <= 1e-8 * scale);
        }
        CHECK(std::is_sorted(rs.real_roots.begin(), rs.real_roots.end()));
    }
}

TEST_CASE("cubic recovery") {
    const auto cube = recover_cubic([](double x) { return x * x * x; }, {-1.0, 0.0, 1.0, 2.0});
    REQUIRE(cube.degree() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(cube.coeffs()[i]) < 1e-12);
    CHECK(cube.coeffs()[3] == doctest::Approx(1.0));

    const auto quad = recover_cubic([](double x) { return 2 - x * x; }, {0.0, 1.0, 2.0, 3.0});
    CHECK(quad.degree() == 2);

    try {
        recover_cubic([](double x) { return x * x * x * x; }, {0.0, 1.0, 2.0, 3.0});
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegreeMismatch);
    }
    try {
        recover_cubic([](double x) { return x; }, {0.0, 1.0, 1.0, 3.0});
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IllConditioned);
    }
}

TEST_CASE("cubic recovery of the model's implicit polynomials") {
    const auto ci = presets::case_i();
    const auto cii = presets::case_ii();

    const auto e2 = recover_cubic([&](double x) { return e2_polynomial(cii, x); }, {0.0, 1.0, 2.0, 3.0}).monic();
    check_coeffs(e2, {1635.14, 932.204, 61.6437, 1.0}, 1e-3);

    const auto h1 = recover_cubic([&](double x) { return e5_polynomial(ci, x); }, {0.0, 1.0, 2.0, 3.0}).monic();
    check_coeffs(h1, {38.4457, 54.1917, 18.4888, 1.0}, 1e-3);
    const auto h2 = recover_cubic([&](double x) { return e5_polynomial(cii, x); }, {0.0, 1.0, 2.0, 3.0}).monic();
    check_coeffs(h2, {46.1203, 62.1861, 19.6443, 1.0}, 1e-3);
}

TEST_CASE("recovered coefficients do not depend on the nodes") {
    for (const auto& p : {presets::case_i(), presets::case_ii(), synthetic_e5()}) {
        for (auto f : {+[](const ModelParams& q, double x) { return e5_polynomial(q, x); },
                       +[](const ModelParams& q, double x) { return e2_polynomial(q, x); },
                       +[](const ModelParams& q, double x) { return e4_cleared(q, x); }}) {
            const auto a = recover_cubic([&](double x) { return f(p, x); }, {0.0, 0.7, 1.4, 2.1});
            const auto b = recover_cubic([&](double x) { return f(p, x); }, {-3.0, -1.5, 4.0, 5.5});
            REQUIRE(a.coeffs().size() == b.coeffs().size());
            const double scale = a.max_abs_coeff();
            for (std::size_t i = 0; i < a.coeffs().size(); ++i)
                CHECK(std::abs(a.coeffs()[i] - b.coeffs()[i]) <= 1e-8 * scale);
        }
    }
}

TEST_CASE("interior polynomial agrees with an independent elimination") {
    for (const auto& p : {presets::case_i(), presets::case_ii(), synthetic_e5()}) {
        const Elimination el{p};
        const std::array<double, 4> nodes{0.5, 1.0, 2.0, 3.0};
        const auto oracle = recover_cubic([&](double s) { return el.resultant(s); }, nodes).monic();
        const auto h = recover_cubic([&](double s) { return e5_polynomial(p, s); }, nodes).monic();
        REQUIRE(oracle.degree() == 3);
        REQUIRE(h.degree() == 3);
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(std::abs(oracle.coeffs()[i] - h.coeffs()[i]) <= 1e-8 * oracle.max_abs_coeff());

        // V5 from the numerator/denominator pair agrees with the elimination
        for (double s : roots(h).positive_real_roots) {
            const auto ratio = e5_ratio(p, s);
            CHECK(ratio.numer / ratio.denom == doctest::Approx(el.v_of(s)).epsilon(1e-9));
        }
    }
}

TEST_CASE("bracket scan") {
    const auto r = bracket_roots([](double x) { return x * x - 2.0; }, 0.0, 2.0, 16);
    REQUIRE(r.size() == 1);
    CHECK(std::abs(r[0] - std::sqrt(2.0)) < 1e-10);

    CHECK(bracket_roots([](double x) { return x * x + 1.0; }, -2.0, 2.0, 16).empty());

    // 1/x changes sign across its pole; skipping that panel leaves nothing
    const std::vector<double> pole{0.0};
    CHECK(bracket_roots([](double x) { return 1.0 / x; }, -1.0, 1.0, 7, pole).empty());

    const auto ci = presets::case_i();
    const auto g1 = bracket_roots([&](double x) { return e4_function(ci, x); }, 0.0, ci.k, 400);
    REQUIRE(g1.size() == 1);
    CHECK(std::abs(g1[0] - 0.359982) < 1e-4);

    const auto cii = presets::case_ii();
    const auto g2 = bracket_roots([&](double x) { return e4_function(cii, x); }, 0.0, cii.k, 400);
    REQUIRE(g2.size() == 1);
    CHECK(std::abs(g2[0] - 0.0947259) < 1e-4);
}

TEST_CASE("polynomial and bracket paths agree") {
    for (const auto& p : {presets::case_i(), presets::case_ii(), synthetic_e5()}) {
        // g: cleared cubic vs scan of the rational function vs the oracle
        const auto cubic = recover_cubic([&](double x) { return e4_cleared(p, x); }, {0.0, 1.0, 2.0, 3.0});
        std::vector<double> from_cubic;
        for (double x : roots(cubic).positive_real_roots)
            if (x <= 10 * p.k) from_cubic.push_back(x);
        const auto scan = bracket_roots([&](double x) { return e4_function(p, x); }, 0.0, 10 * p.k, 4000);
        const auto oracle = bracket_roots([&](double x) { return e4_oracle(p, x); }, 0.0, 10 * p.k, 4000);
        REQUIRE(scan.size() == from_cubic.size());
        REQUIRE(oracle.size() == scan.size());
        for (std::size_t i = 0; i < scan.size(); ++i) {
            CHECK(std::abs(scan[i] - from_cubic[i]) < 1e-6);
            CHECK(std::abs(scan[i] - oracle[i]) < 1e-6);
        }

        // h: roots of the recovered cubic vs scanning h directly
        const auto h = recover_cubic([&](double x) { return e5_polynomial(p, x); }, {0.0, 1.0, 2.0, 3.0});
        const auto hr = roots(h).real_roots;
        const double lo = hr.front() - 1.0, hi = hr.back() + 1.0;
        const auto hs = bracket_roots([&](double x) { return e5_polynomial(p, x); }, lo, hi, 20000);
        REQUIRE(hs.size() == hr.size());
        for (std::size_t i = 0; i < hs.size(); ++i) CHECK(std::abs(hs[i] - hr[i]) < 1e-6);
    }
}
