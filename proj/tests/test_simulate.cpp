#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "brusselab/bloch.hpp"
#include "brusselab/dispersion.hpp"
#include "brusselab/errors.hpp"
#include "brusselab/simulate.hpp"

using namespace brusselab;
using std::numbers::pi;

namespace {
const RDModel& model() {
    static const RDModel m = brusselator();
    return m;
}
double sup(const SimState& s) { return std::max(s.u1.cwiseAbs().maxCoeff(), s.u2.cwiseAbs().maxCoeff()); }
double l2(const SimState& s) { return std::sqrt(s.u1.squaredNorm() + s.u2.squaredNorm()); }
} // namespace

TEST_CASE("grid sizes") {
    CHECK(default_grid_points(1) == 128);
    CHECK(default_grid_points(4) == 128);
    CHECK(default_grid_points(5) == 256);
    CHECK(default_grid_points(16) == 512);
    CHECK_THROWS_AS(homogeneous_state(100, 1.0), ParameterError);
    CHECK_THROWS_AS(homogeneous_state(64, 1.0), ParameterError);
}

TEST_CASE("perturbation is seeded and bounded") {
    SimState a = homogeneous_state(256, 10.0), b = a, c = a;
    add_random_perturbation(a, 1e-3, 42);
    add_random_perturbation(b, 1e-3, 42);
    add_random_perturbation(c, 1e-3, 43);
    CHECK(a.u1 == b.u1);
    CHECK(a.u2 == b.u2);
    CHECK(a.u1 != c.u1);
    CHECK(sup(a) <= 1e-3);
    CHECK(sup(a) > 9e-4);
}

TEST_CASE("homogeneous state is stable below onset") {
    SimState s = homogeneous_state(256, 2 * pi * 8 / 0.5);
    add_random_perturbation(s, 1e-3, 1);
    const Trajectory tr = integrate(model(), s, -0.1, 0.1, 200.0, 100);
    CHECK_FALSE(tr.diverged);
    CHECK(sup(tr.final_state) <= 1e-6);
    CHECK(tr.final_state.t == doctest::Approx(200.0));
}

TEST_CASE("single Fourier mode follows the dispersion relation") {
    // linear regime at b = 0: u = amp * r cos(kappa x) with r the leading eigenvector
    const double L = 2 * pi * 8 / 0.5;
    for (int j : {6, 8, 16}) {
        const double kap = 2 * pi * j / L;
        const Mat2d S = symbol(model(), 0.0, kap);
        const auto lam = eig2(S);
        REQUIRE(std::abs(lam[0].imag()) == 0.0);
        const double rate = lam[0].real();
        Vec2d r(S(0, 1), rate - S(0, 0));  // (S - rate) r = 0
        r.normalize();
        SimState s = homogeneous_state(256, L);
        for (int i = 0; i < s.P; ++i) {
            const double c = 1e-9 * std::cos(kap * L * i / s.P);
            s.u1(i) = c * r(0);
            s.u2(i) = c * r(1);
        }
        const double n0 = l2(s);
        // about five e-foldings keeps the signal well above rounding
        const double T = std::min(20.0, 5.0 / std::abs(rate));
        const Trajectory tr = integrate(model(), s, 0.0, 0.05, T, 1 << 20);
        const double measured = std::log(l2(tr.final_state) / n0) / T;
        CHECK(measured == doctest::Approx(rate).epsilon(0.01).scale(1e-3));
    }
}

TEST_CASE("time stepping is second order") {
    const PeriodicProfile p = solve_profile(model(), 0.15, 0.1, 32);
    SimState s0 = tile_profile(p, 4, 128);
    add_random_perturbation(s0, 1e-2, 3);
    const double b = 0.05;  // away from the profile's own parameter, so the state evolves
    const double dt = 0.1;
    const SimState ref = integrate(model(), s0, b, dt / 32, 10.0, 1 << 20).final_state;
    auto err = [&](double h) {
        const SimState s = integrate(model(), s0, b, h, 10.0, 1 << 20).final_state;
        return std::sqrt((s.u1 - ref.u1).squaredNorm() + (s.u2 - ref.u2).squaredNorm());
    };
    const double e1 = err(dt), e2 = err(dt / 2);
    CHECK(e1 > 1e-10);
    const double ratio = e1 / e2;
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 5.0);
}

TEST_CASE("distance modulo translation") {
    const PeriodicProfile p = solve_profile(model(), 0.05, 0.1, 32);
    const int P = 512, Q = 16;
    const SimState s = tile_profile(p, Q, P);
    CHECK(distance_mod_translation(s, p, p.k) < 1e-12);

    // shift by a quarter period: 8 grid points per cell quarter
    SimState t = s;
    const int q = P / Q / 4;
    for (int i = 0; i < P; ++i) {
        t.u1(i) = s.u1((i + q) % P);
        t.u2(i) = s.u2((i + q) % P);
    }
    CHECK(distance_mod_translation(t, p, p.k) < 1e-12);

    // sub-grid shift, evaluated analytically
    SimState f = s;
    const double shift = 0.37 * (2 * pi / P) * Q;
    for (int i = 0; i < P; ++i) {
        const Vec2d u = p.value(2 * pi * Q * i / P + shift);
        f.u1(i) = u(0);
        f.u2(i) = u(1);
    }
    CHECK(distance_mod_translation(f, p, p.k) < 1e-9);

    SimState n = s;
    add_random_perturbation(n, 1e-3, 5);
    // uniform noise on [-a, a] has rms a / sqrt(3) per component
    const double expected = 1e-3 / std::sqrt(3.0) / profile_rms(p, P);
    const double d = distance_mod_translation(n, p, p.k);
    CHECK(d > expected / 2);
    CHECK(d < expected * 2);

    SimState bad = s;
    bad.L *= 1.01;
    CHECK_THROWS_AS(distance_mod_translation(bad, p, p.k), DomainError);
}

TEST_CASE("stable pattern stays close") {
    const PeriodicProfile p = solve_profile(model(), 0.05, 0.0, 32);
    const PatternRun run = simulate_pattern(model(), p, 8, 200.0, 0.05, 1e-4, 11, 10.0);
    CHECK_FALSE(run.trajectory.diverged);
    double worst = 0.0;
    for (const auto& s : run.trajectory.samples) worst = std::max(worst, s.distance * run.profile_rms);
    CHECK(worst <= 1e-3);
    CHECK(run.trajectory.samples.back().distance <= run.trajectory.samples.front().distance);
}

TEST_CASE("sideband growth matches the largest Bloch rate") {
    // eps and Q chosen so that an admissible sigma = j/Q sits near the peak of
    // the unstable band and the growth is resolvable in a short run
    const double eps = 0.2, w = 0.2;
    const int Q = 14;
    const PeriodicProfile p = solve_profile(model(), eps, w, 32);
    double best = -1e9;
    for (int j = 0; j <= Q / 2; ++j) {
        const SpectrumSlice s = bloch_spectrum(model(), p, static_cast<double>(j) / Q);
        best = std::max({best, s.critical[0].real(), s.critical[1].real()});
    }
    REQUIRE(best > 0.0);
    const PatternRun run = simulate_pattern(model(), p, Q, 600.0, 0.05, 1e-5, 7, 50.0);
    const auto& sm = run.trajectory.samples;
    auto at = [&](double t) {
        for (const auto& s : sm)
            if (std::abs(s.t - t) < 1e-6) return s.distance;
        FAIL("missing sample");
        return 0.0;
    };
    const double rate = std::log(at(600.0) / at(300.0)) / 300.0;
    CHECK(rate == doctest::Approx(best).epsilon(0.1));
}

TEST_CASE("divergence is reported") {
    SimState s = homogeneous_state(128, 2 * pi * 4 / 0.5);
    add_random_perturbation(s, 1.0, 2);
    // far beyond onset the small-amplitude picture breaks down
    const Trajectory tr = integrate(model(), s, 20.0, 0.1, 200.0, 10);
    if (tr.diverged) CHECK(tr.divergence_time > 0.0);
    CHECK_THROWS_AS(integrate(model(), s, 0.0, 0.2, 1.0), ParameterError);
}
