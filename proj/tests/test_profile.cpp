#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "brusselab/errors.hpp"
#include "brusselab/profile.hpp"

using namespace brusselab;

namespace {
const RDModel& model() {
    static const RDModel m = brusselator();
    return m;
}
const GLData& gl() {
    static const GLData g = gl_coefficients(model());
    return g;
}
double alpha1(double w) { return std::sqrt((2.0 / 3.0) * (1 - 16 * w * w)); }
} // namespace

TEST_CASE("wavenumber") {
    CHECK(wavenumber(0.1, 0.0) == 0.5);
    CHECK(wavenumber(0.0, 0.25) == 0.5);
    CHECK(wavenumber(0.1, 0.25) == doctest::Approx((0.05 + std::sqrt(1.0025)) / 2).epsilon(1e-15));
    CHECK(wavenumber(0.1, 0.25) == doctest::Approx(0.525624).epsilon(1e-6));
    // positive root of k^2 - 2 eps w k - 1/4 = 0
    const double k = wavenumber(0.07, -0.2);
    CHECK(std::abs(k * k - 2 * 0.07 * -0.2 * k - 0.25) < 1e-15);
}

TEST_CASE("cosine grid projection inverts synthesis") {
    const CosineGrid g(16);
    CHECK(g.P == 68);
    CHECK((g.W * g.C - Eigen::MatrixXd::Identity(17, 17)).norm() < 1e-13);
}

TEST_CASE("initial guess") {
    PeriodicProfile p = initial_guess(gl(), 0.0, 0.1, 32);
    CHECK(p.coeffs.norm() == 0.0);
    p = initial_guess(gl(), 0.05, 0.25, 32);
    CHECK(p.coeffs.norm() < 1e-9);

    const double eps = 0.05, a1 = alpha1(0.0);
    p = initial_guess(gl(), eps, 0.0, 32);
    CHECK(p.coeffs(1, 0) == doctest::Approx(2 * a1 * eps));
    CHECK(p.coeffs(1, 1) == doctest::Approx(-a1 * eps));
    CHECK(p.coeffs.row(0).norm() == 0.0);
    CHECK(p.coeffs.bottomRows(30).norm() == 0.0);
}

TEST_CASE("solved profile invariants") {
    for (double w : {0.0, 0.1, -0.15, 0.2}) {
        const PeriodicProfile p = solve_profile(model(), 0.05, w, 32);
        CHECK(p.solved);
        CHECK(p.residual <= 1e-10);
        CHECK(p.coeffs.col(0).sum() > 0.0);
        CHECK(p.k == wavenumber(0.05, w));
        CHECK(p.warnings.empty());
        const double big = p.coeffs.cwiseAbs().maxCoeff();
        CHECK(p.coeffs.row(32).cwiseAbs().maxCoeff() <= 1e-12 * big);
        // residual on a finer grid than the one used by Newton
        CHECK(collocation_residual(model(), p, 1000) <= 1e-10);
        CHECK(p.value(0.3)(0) == doctest::Approx(p.value(-0.3)(0)).epsilon(1e-14));
    }
}

TEST_CASE("mode-1 amplitude near the expansion") {
    const double eps = 0.05;
    const PeriodicProfile p = solve_profile(model(), eps, 0.0, 32);
    CHECK(std::abs(p.coeffs(1, 0) - 2 * alpha1(0) * eps) <= 10 * std::pow(eps, 3));
    CHECK(amplitude_alpha(p) == doctest::Approx(0.0408248).epsilon(1e-3));

    const double w = 0.1;
    const PeriodicProfile q = solve_profile(model(), eps, w, 32);
    const double pred = alpha1(w) * eps - (5.0 / 9.0) * w * alpha1(w) * eps * eps;
    CHECK(std::abs(amplitude_alpha(q) - pred) <= 10 * std::pow(eps, 3));
}

TEST_CASE("second-order mode-1 correction carries a factor omega") {
    // The (1,-2) part of the eps^2 term vanishes at w = 0: compare the solved
    // profile against both readings of the expansion.
    const double eps = 0.02;
    for (double w : {0.0, 0.1}) {
        const PeriodicProfile p = solve_profile(model(), eps, w, 32);
        const double a1 = alpha1(w);
        const Vec2d first = eps * a1 * Vec2d(2, -1) - eps * eps * (5.0 / 9.0) * w * a1 * Vec2d(2, -1);
        const Vec2d with_w = first - eps * eps * (4.0 / 3.0) * w * a1 * Vec2d(1, -2);
        const Vec2d without_w = first - eps * eps * (4.0 / 3.0) * a1 * Vec2d(1, -2);
        const Vec2d c1 = p.coeffs.row(1).transpose();
        CHECK((c1 - with_w).norm() < 5 * std::pow(eps, 3));
        CHECK((c1 - without_w).norm() > 0.5 * eps * eps);
    }
}

TEST_CASE("mode 0 and mode 2 are third order") {
    const double eps = 0.1;
    const PeriodicProfile p = solve_profile(model(), eps, 0.0, 32);
    CHECK(p.coeffs.row(0).norm() < 5 * std::pow(eps, 3));
    CHECK(p.coeffs.row(2).norm() < 5 * std::pow(eps, 3));

    const auto modes = expansion_modes(0.02, 0.2);
    const PeriodicProfile q = solve_profile(model(), 0.02, 0.2, 32);
    for (int m = 0; m < 3; ++m)
        CHECK((q.coeffs.row(m).transpose() - modes[m]).norm() < 0.05 * std::max(modes[m].norm(), 1e-7));
}

TEST_CASE("band edge gives the zero profile") {
    const PeriodicProfile p = solve_profile(model(), 0.05, 0.25, 32);
    CHECK(p.coeffs.cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(amplitude_alpha(p) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(p.warnings.empty());
}

TEST_CASE("spectral convergence in N") {
    for (double w : {0.0, 0.15}) {
        const PeriodicProfile a = solve_profile(model(), 0.1, w, 32);
        const PeriodicProfile b = solve_profile(model(), 0.1, w, 64);
        CHECK(std::abs(amplitude_alpha(a) - amplitude_alpha(b)) <= 1e-12);
        CHECK((a.coeffs - b.coeffs.topRows(33)).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("Newton from an inflated guess finds the same profile") {
    for (double eps : {0.02, 0.05}) {
        const PeriodicProfile p = solve_profile(model(), eps, 0.1, 32);
        PeriodicProfile g = initial_guess(gl(), eps, 0.1, 32);
        g.coeffs *= 1.5;
        const PeriodicProfile q = solve_profile_from(model(), g);
        CHECK((p.coeffs - q.coeffs).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("reflected guess is normalized to u1(0) > 0") {
    PeriodicProfile g = initial_guess(gl(), 0.05, 0.0, 32);
    g.coeffs *= -1.0;
    const PeriodicProfile q = solve_profile_from(model(), g);
    const PeriodicProfile p = solve_profile(model(), 0.05, 0.0, 32);
    CHECK(q.value(0.0)(0) > 0.0);
    CHECK((p.coeffs - q.coeffs).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("jacobian cosine coefficients reproduce df(u)") {
    const PeriodicProfile p = solve_profile(model(), 0.08, 0.1, 32);
    const Eigen::MatrixXd jc = jacobian_cosine_coeffs(model(), p);
    for (double xi : {0.0, 0.4, 2.0, 3.1}) {
        const Mat2d J = model().jacobian(p.value(xi), p.b);
        Mat2d s = Mat2d::Zero();
        for (int m = 0; m < jc.rows(); ++m) {
            s(0, 0) += jc(m, 0) * std::cos(m * xi);
            s(0, 1) += jc(m, 1) * std::cos(m * xi);
            s(1, 0) += jc(m, 2) * std::cos(m * xi);
            s(1, 1) += jc(m, 3) * std::cos(m * xi);
        }
        CHECK((s - J).norm() < 1e-12);
    }
}

TEST_CASE("expansion validation") {
    const std::vector<double> grid{0.01, 0.02, 0.04, 0.08};
    for (double w : {0.0, 0.2}) {
        const ExpansionReport r = validate_expansion(model(), gl(), w, grid);
        CHECK(r.points.size() == 4);
        CHECK(r.slope >= 2.7);
    }
    const ExpansionReport edge = validate_expansion(model(), gl(), 0.25, grid);
    for (const auto& pt : edge.points) CHECK(std::abs(pt.alpha) <= 1e-10);
    CHECK_THROWS_AS(validate_expansion(model(), gl(), 0.0, {0.01, 0.02, 0.04}), ParameterError);
    CHECK_THROWS_AS(validate_expansion(model(), gl(), 0.0, {0.01, 0.02, 0.04, 0.2}), ParameterError);
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(solve_profile(model(), 0.3, 0.0), ParameterError);
    CHECK_THROWS_AS(solve_profile(model(), 0.05, 0.0, 8), ParameterError);
    CHECK_THROWS_AS(solve_profile(model(), 0.05, 0.3), Error);
}
