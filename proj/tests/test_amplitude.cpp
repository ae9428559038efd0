#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "brusselab/amplitude.hpp"
#include "brusselab/errors.hpp"

using namespace brusselab;

namespace {
const GLData& canonical() {
    static const GLData gl = gl_coefficients(brusselator());
    return gl;
}
} // namespace

TEST_CASE("Brusselator GL coefficients") {
    const GLData& gl = canonical();
    CHECK(std::abs(gl.d - 32.0 / 3.0) < 1e-9);
    CHECK(std::abs(gl.e - 2.0 / 3.0) < 1e-9);
    CHECK(std::abs(gl.f - 1.0) < 1e-9);
    CHECK(gl.psi0.norm() < 1e-12);
    CHECK(gl.psi2.norm() < 1e-12);
}

TEST_CASE("linear coefficients agree with the dispersion module") {
    for (const RDModel& m : {brusselator(), brusselator(3.0, 2.0, 40.0)}) {
        const GLData gl = gl_coefficients(m);
        const TuringOnset on = find_turing_onset(m);
        CHECK(std::abs(gl.e - on.lam_mu) < 1e-10);
        CHECK(std::abs(gl.d + on.lam_kk / 2) < 1e-10);
        // finite-difference route, independent of the analytic formulas
        CHECK(gl.e == doctest::Approx(on.fd_lam_mu).epsilon(1e-5));
        CHECK(gl.d == doctest::Approx(-on.fd_lam_kk / 2).epsilon(1e-5));
    }
}

TEST_CASE("non-canonical model gives a supercritical bifurcation") {
    const GLData gl = gl_coefficients(brusselator(3.0, 2.0, 40.0));
    CHECK(gl.d > 0);
    CHECK(gl.e > 0);
    CHECK(std::isfinite(gl.f));
    CHECK(gl.i_s.hi < gl.i_e.hi);
}

TEST_CASE("existence and stability bands") {
    const GLData& gl = canonical();
    CHECK(gl.i_e.closed);
    CHECK_FALSE(gl.i_s.closed);
    CHECK(std::abs(gl.i_e.lo + 0.25) < 1e-12);
    CHECK(std::abs(gl.i_e.hi - 0.25) < 1e-12);
    CHECK(std::abs(gl.i_s.hi - 1.0 / (4.0 * std::sqrt(3.0))) < 1e-12);
    CHECK(std::abs(gl.i_s.lo + 1.0 / (4.0 * std::sqrt(3.0))) < 1e-12);
    CHECK(gl.i_e.contains(0.25));
    CHECK_FALSE(gl.i_s.contains(gl.i_s.hi));
}

TEST_CASE("GL wave amplitude") {
    const GLData& gl = canonical();
    CHECK(gl_wave_amplitude(gl, 0.0) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
    CHECK(gl_wave_amplitude(gl, 0.25) == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(gl_wave_amplitude(gl, 0.125) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK_THROWS_AS(gl_wave_amplitude(gl, 0.3), DomainError);
}

TEST_CASE("GL matrix examples") {
    const GLData& gl = canonical();
    Mat2c A = gl_matrix(gl, 0.0, 0.0);
    CHECK(std::abs(A(0, 0) + 4.0 / 3.0) < 1e-12);
    CHECK(std::abs(A(1, 1)) < 1e-12);
    CHECK(std::abs(A(0, 1)) + std::abs(A(1, 0)) < 1e-12);
    CHECK(gl_matrix(gl, 0.25, 0.0).norm() < 1e-12);

    const double w = 0.1, s = 0.7;
    A = gl_matrix(gl, w, s);
    CHECK((A - A.adjoint()).norm() == 0.0);
    CHECK(std::abs(A(0, 0) - cplx(-(4.0 / 3.0) * (1 - 16 * w * w) - (32.0 / 3.0) * s * s)) < 1e-12);
    CHECK(std::abs(A(0, 1) - cplx(0, (64.0 / 3.0) * w * s)) < 1e-12);
}

TEST_CASE("gl_eigen agrees with a Hermitian eigensolver") {
    const GLData& gl = canonical();
    for (double w : {-0.2, -0.05, 0.0, 0.1, 0.14, 0.24}) {
        for (double s : {0.0, 0.1, 0.5, 1.3}) {
            Eigen::SelfAdjointEigenSolver<Mat2c> es(gl_matrix(gl, w, s));
            const auto l = gl_eigen(gl, w, s);
            CHECK(l[0] == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-12).scale(1.0));
            CHECK(l[1] == doctest::Approx(es.eigenvalues()(1)).epsilon(1e-12).scale(1.0));
        }
        const auto l0 = gl_eigen(gl, w, 0.0);
        CHECK(std::abs(l0[1]) < 1e-14);
        CHECK(l0[0] == doctest::Approx(-(4.0 / 3.0) * (1 - 16 * w * w)));
        for (double s = 0.0; s <= 2.0; s += 0.05) CHECK(gl_eigen(gl, w, s)[0] <= l0[0] + 1e-14);
    }
}

TEST_CASE("lam2 curvature at w = 0 is -32/3") {
    const GLData& gl = canonical();
    const double s = 1e-4;
    CHECK(gl_eigen(gl, 0.0, s)[1] / (s * s) == doctest::Approx(-32.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("lam2 curvature changes sign at the Eckhaus edge") {
    const GLData& gl = canonical();
    const double edge = 1.0 / (4.0 * std::sqrt(3.0)), s = 1e-3;
    CHECK(gl_eigen(gl, edge - 0.005, s)[1] < 0.0);
    CHECK(gl_eigen(gl, edge + 0.005, s)[1] > 0.0);
}

TEST_CASE("det of the GL matrix is nonnegative exactly on the stable band") {
    const GLData& gl = canonical();
    const double edge = 1.0 / (4.0 * std::sqrt(3.0));
    for (double w = 0.0; w <= 0.25; w += 0.0025) {
        if (std::abs(w - edge) < 2e-3) continue;
        double min_det = 1e9;
        for (int i = 1; i <= 200; ++i) min_det = std::min(min_det, gl_matrix(gl, w, 0.01 * i).determinant().real());
        CHECK((min_det >= 0.0) == (w < edge));
    }
}
