#include "brusselab/simulate.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <unsupported/Eigen/FFT>
#include <unsupported/Eigen/MatrixFunctions>

#include "brusselab/errors.hpp"

namespace brusselab {

using std::numbers::pi;

int default_grid_points(int cells) {
    int P = 128;
    while (P < 32 * cells) P *= 2;
    return P;
}

SimState homogeneous_state(int P, double L) {
    if (P < 128 || (P & (P - 1)) != 0) throw ParameterError("grid size must be a power of two >= 128");
    if (!(L > 0.0)) throw ParameterError("domain length must be positive");
    SimState s;
    s.P = P;
    s.L = L;
    s.u1 = Eigen::VectorXd::Zero(P);
    s.u2 = Eigen::VectorXd::Zero(P);
    return s;
}

SimState tile_profile(const PeriodicProfile& p, int cells, int P) {
    if (cells < 1) throw ParameterError("need at least one pattern cell");
    SimState s = homogeneous_state(P, 2.0 * pi * cells / p.k);
    for (int j = 0; j < P; ++j) {
        const Vec2d u = p.value(2.0 * pi * cells * j / P);
        s.u1(j) = u(0);
        s.u2(j) = u(1);
    }
    return s;
}

void add_random_perturbation(SimState& s, double amplitude, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    auto draw = [&] { return amplitude * (2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53 - 1.0); };
    for (int j = 0; j < s.P; ++j) s.u1(j) += draw();
    for (int j = 0; j < s.P; ++j) s.u2(j) += draw();
}

namespace {

using CVec = std::vector<cplx>;

double wavenum(int j, int P, double L) {
    const int jj = j <= P / 2 ? j : j - P;
    return 2.0 * pi * jj / L;
}

struct Spectral {
    Eigen::FFT<double> fft;
    int P;
    std::vector<double> buf;

    explicit Spectral(int p) : P(p), buf(p) {}

    CVec fwd(const Eigen::VectorXd& v) {
        for (int j = 0; j < P; ++j) buf[j] = v(j);
        CVec out;
        fft.fwd(out, buf);
        return out;
    }
    void inv(Eigen::VectorXd& v, const CVec& c) {
        CVec tmp;
        fft.inv(tmp, c);
        for (int j = 0; j < P; ++j) v(j) = tmp[j].real();
    }
};

struct Nonlinear {
    double c2, c_mix;
    explicit Nonlinear(const RDModel& m, double b)
        : c2(m.beta(b) / m.params().a), c_mix(2.0 * m.params().a) {}
    void operator()(const SimState& s, Eigen::VectorXd& n1, Eigen::VectorXd& n2) const {
        const auto u1 = s.u1.array(), u2 = s.u2.array();
        n1 = (c2 * u1.square() + c_mix * u1 * u2 + u1.square() * u2).matrix();
        n2 = -n1;
    }
};

} // namespace

Trajectory integrate(const RDModel& model, SimState state, double b, double dt, double t_end,
                     int stride, const DistanceFn& distance) {
    if (!(dt > 0.0) || dt > 0.1) throw ParameterError("time step must lie in (0, 0.1]");
    if (!(t_end >= 0.0)) throw ParameterError("end time must be non-negative");
    if (stride < 1) throw ParameterError("sampling stride must be positive");
    const int P = state.P;
    if (P < 128 || (P & (P - 1)) != 0) throw ParameterError("grid size must be a power of two >= 128");

    const long steps = std::max(1L, static_cast<long>(std::ceil(t_end / dt - 1e-9)));
    const double h = t_end > 0.0 ? t_end / steps : dt;

    // exp of [[hA, I, 0], [0, 0, I], [0, 0, 0]] holds e^{hA}, phi1(hA), phi2(hA).
    const Mat2d M0 = model.linear_part(b), D = model.diffusion();
    std::vector<Mat2d> E(P), F1(P), F2(P);
    for (int j = 0; j < P; ++j) {
        const double kap = wavenum(j, P, state.L);
        Eigen::Matrix<double, 6, 6> Z = Eigen::Matrix<double, 6, 6>::Zero();
        Z.block<2, 2>(0, 0) = h * (M0 - kap * kap * D);
        Z.block<2, 2>(0, 2).setIdentity();
        Z.block<2, 2>(2, 4).setIdentity();
        const Eigen::Matrix<double, 6, 6> X = Z.exp();
        E[j] = X.block<2, 2>(0, 0);
        F1[j] = h * X.block<2, 2>(0, 2);
        F2[j] = h * X.block<2, 2>(0, 4);
    }

    Spectral sp(P);
    const Nonlinear nonlin(model, b);
    Trajectory tr;
    auto sample = [&](const SimState& s) {
        SimSample smp;
        smp.t = s.t;
        smp.max_field = std::max(s.u1.cwiseAbs().maxCoeff(), s.u2.cwiseAbs().maxCoeff());
        smp.distance = distance ? distance(s) : std::numeric_limits<double>::quiet_NaN();
        tr.samples.push_back(smp);
    };
    sample(state);

    Eigen::VectorXd n1(P), n2(P);
    CVec a1(P), a2(P), v1(P), v2(P);
    const double t0 = state.t;
    for (long step = 1; step <= steps && t_end > 0.0; ++step) {
        const CVec u1h = sp.fwd(state.u1), u2h = sp.fwd(state.u2);
        nonlin(state, n1, n2);
        const CVec n1h = sp.fwd(n1), n2h = sp.fwd(n2);
        for (int j = 0; j < P; ++j) {
            a1[j] = E[j](0, 0) * u1h[j] + E[j](0, 1) * u2h[j] + F1[j](0, 0) * n1h[j] + F1[j](0, 1) * n2h[j];
            a2[j] = E[j](1, 0) * u1h[j] + E[j](1, 1) * u2h[j] + F1[j](1, 0) * n1h[j] + F1[j](1, 1) * n2h[j];
        }
        SimState mid = state;
        sp.inv(mid.u1, a1);
        sp.inv(mid.u2, a2);
        nonlin(mid, n1, n2);
        const CVec m1h = sp.fwd(n1), m2h = sp.fwd(n2);
        for (int j = 0; j < P; ++j) {
            const cplx d1 = m1h[j] - n1h[j], d2 = m2h[j] - n2h[j];
            v1[j] = a1[j] + F2[j](0, 0) * d1 + F2[j](0, 1) * d2;
            v2[j] = a2[j] + F2[j](1, 0) * d1 + F2[j](1, 1) * d2;
        }
        sp.inv(state.u1, v1);
        sp.inv(state.u2, v2);
        state.t = t0 + step * h;

        const double mx = std::max(state.u1.cwiseAbs().maxCoeff(), state.u2.cwiseAbs().maxCoeff());
        if (!std::isfinite(mx) || mx > 1e6) {
            tr.diverged = true;
            tr.divergence_time = state.t;
            break;
        }
        if (step % stride == 0 || step == steps) sample(state);
    }
    tr.final_state = std::move(state);
    return tr;
}

namespace {

struct ShiftFit {
    double dist2;
    double norm2;
};

ShiftFit best_shift(const SimState& s, const SimState& ref) {
    const int P = s.P;
    Spectral sp(P);
    const CVec u1 = sp.fwd(s.u1), u2 = sp.fwd(s.u2);
    const CVec p1 = sp.fwd(ref.u1), p2 = sp.fwd(ref.u2);
    CVec X(P);
    for (int j = 0; j < P; ++j) X[j] = u1[j] * std::conj(p1[j]) + u2[j] * std::conj(p2[j]);

    // correlation at discrete shifts, then golden-section refinement
    CVec corr;
    sp.fft.inv(corr, X);
    int best = 0;
    for (int l = 1; l < P; ++l)
        if (corr[l].real() > corr[best].real()) best = l;
    const double dx = s.L / P;
    auto C = [&](double shift) {
        double acc = 0.0;
        for (int j = 0; j < P; ++j) acc += (X[j] * std::polar(1.0, wavenum(j, P, s.L) * shift)).real();
        return acc / P;
    };
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = (best - 1) * dx, hi = (best + 1) * dx;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double c1 = C(x1), c2 = C(x2);
    for (int it = 0; it < 60; ++it) {
        if (c1 > c2) {
            hi = x2; x2 = x1; c2 = c1;
            x1 = hi - g * (hi - lo); c1 = C(x1);
        } else {
            lo = x1; x1 = x2; c1 = c2;
            x2 = lo + g * (hi - lo); c2 = C(x2);
        }
    }
    double shift = 0.5 * (lo + hi);
    // the maximum of C is flat; polish with Newton on C' for full precision
    for (int it = 0; it < 3; ++it) {
        double d1 = 0.0, d2c = 0.0;
        for (int j = 0; j < P; ++j) {
            const double kap = wavenum(j, P, s.L);
            const cplx z = X[j] * std::polar(1.0, kap * shift);
            d1 -= kap * z.imag();
            d2c -= kap * kap * z.real();
        }
        if (!(d2c < 0.0)) break;
        const double next = shift - d1 / d2c;
        if (!(std::abs(next - shift) < dx)) break;
        shift = next;
    }
    if (corr[best].real() > C(shift)) shift = best * dx;

    // difference evaluated in Fourier space to avoid cancellation
    double d2 = 0.0, n2 = 0.0;
    for (int j = 0; j < P; ++j) {
        const cplx ph = std::polar(1.0, -wavenum(j, P, s.L) * shift);
        d2 += std::norm(u1[j] - p1[j] * ph) + std::norm(u2[j] - p2[j] * ph);
        n2 += std::norm(p1[j]) + std::norm(p2[j]);
    }
    return {d2 / P, n2 / P};
}

} // namespace

double distance_mod_translation(const SimState& state, const PeriodicProfile& p, double k) {
    const double cells = state.L * k / (2.0 * pi);
    const int Q = static_cast<int>(std::lround(cells));
    if (Q < 1 || std::abs(cells - Q) > 1e-8 * cells)
        throw DomainError("domain length is not a whole number of profile periods");
    PeriodicProfile pk = p;
    pk.k = k;
    const SimState ref = tile_profile(pk, Q, state.P);
    const ShiftFit fit = best_shift(state, ref);
    if (!(fit.norm2 > 0.0)) throw DomainError("distance to the zero profile is undefined");
    return std::sqrt(std::max(0.0, fit.dist2) / fit.norm2);
}

double profile_rms(const PeriodicProfile& p, int P) {
    const SimState s = tile_profile(p, 1, P);
    return std::sqrt((s.u1.squaredNorm() + s.u2.squaredNorm()) / P);
}

PatternRun simulate_pattern(const RDModel& model, const PeriodicProfile& p, int cells, double t_end,
                            double dt, double amplitude, std::uint64_t seed, double sample_dt) {
    PatternRun run;
    run.P = default_grid_points(cells);
    SimState s = tile_profile(p, cells, run.P);
    run.L = s.L;
    run.profile_rms = profile_rms(p, run.P);
    add_random_perturbation(s, amplitude, seed);
    const int stride = std::max(1, static_cast<int>(std::lround(sample_dt / dt)));
    run.trajectory = integrate(model, std::move(s), p.b, dt, t_end, stride,
                               [&](const SimState& st) { return distance_mod_translation(st, p, p.k); });
    return run;
}

} // namespace brusselab
