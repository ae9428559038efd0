#include "brusselab/profile.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "brusselab/errors.hpp"

namespace brusselab {

using std::numbers::pi;

Vec2d PeriodicProfile::value(double xi) const {
    Vec2d u = Vec2d::Zero();
    for (int m = 0; m < coeffs.rows(); ++m) u += coeffs.row(m).transpose() * std::cos(m * xi);
    return u;
}

Vec2d PeriodicProfile::derivative(double xi) const {
    Vec2d u = Vec2d::Zero();
    for (int m = 1; m < coeffs.rows(); ++m) u -= coeffs.row(m).transpose() * (m * std::sin(m * xi));
    return u;
}

double wavenumber(double eps, double omega) {
    return (2.0 * eps * omega + std::sqrt(4.0 * eps * eps * omega * omega + 1.0)) / 2.0;
}

CosineGrid::CosineGrid(int n) : N(n), P(4 * (n + 1)) {
    xi.resize(P);
    C.resize(P, N + 1);
    for (int j = 0; j < P; ++j) {
        xi(j) = 2.0 * pi * j / P;
        for (int m = 0; m <= N; ++m) C(j, m) = std::cos(m * xi(j));
    }
    W = (2.0 / P) * C.transpose();
    W.row(0) *= 0.5;
}

namespace {

double canonical_alpha1(double omega) {
    return std::sqrt(std::max(0.0, (2.0 / 3.0) * (1.0 - 16.0 * omega * omega)));
}

void check_omega(double omega) {
    if (!(std::abs(omega) <= 0.25 + 1e-15)) throw DomainError("omega must lie in [-1/4, 1/4]");
}

struct GalerkinSystem {
    const RDModel& model;
    const CosineGrid& g;
    double k, b;
    Eigen::ArrayXd m2;  // m^2

    GalerkinSystem(const RDModel& mdl, const CosineGrid& grid, double kk, double bb)
        : model(mdl), g(grid), k(kk), b(bb) {
        m2 = Eigen::ArrayXd::LinSpaced(g.N + 1, 0, g.N).square();
    }

    Eigen::MatrixXd reaction_grid(const CoeffTable& c) const {
        const Eigen::MatrixXd U = g.C * c;
        Eigen::MatrixXd F(g.P, 2);
        for (int j = 0; j < g.P; ++j)
            F.row(j) = model.reaction<double>(U.row(j).transpose(), b).transpose();
        return F;
    }

    CoeffTable residual(const CoeffTable& c) const {
        CoeffTable R = g.W * reaction_grid(c);
        const Mat2d D = model.diffusion();
        for (int j = 0; j < 2; ++j) R.col(j).array() -= k * k * D(j, j) * m2 * c.col(j).array();
        return R;
    }

    Eigen::MatrixXd jacobian(const CoeffTable& c) const {
        const int n = g.N + 1;
        const Eigen::MatrixXd U = g.C * c;
        Eigen::MatrixXd Jg(g.P, 4);
        for (int j = 0; j < g.P; ++j) {
            const Mat2d J = model.jacobian<double>(U.row(j).transpose(), b);
            Jg.row(j) << J(0, 0), J(0, 1), J(1, 0), J(1, 1);
        }
        Eigen::MatrixXd A(2 * n, 2 * n);
        const Mat2d D = model.diffusion();
        for (int r = 0; r < 2; ++r)
            for (int s = 0; s < 2; ++s) {
                A.block(r * n, s * n, n, n) = g.W * (Jg.col(2 * r + s).asDiagonal() * g.C);
                if (r == s) A.block(r * n, s * n, n, n).diagonal().array() -= k * k * D(r, r) * m2;
            }
        return A;
    }
};

double max_abs(const CoeffTable& c) { return c.size() ? c.cwiseAbs().maxCoeff() : 0.0; }

} // namespace

PeriodicProfile initial_guess(const GLData& gl, double eps, double omega, int N) {
    check_omega(omega);
    if (N < 2) throw ParameterError("truncation must be at least 2");
    PeriodicProfile p;
    p.eps = eps;
    p.omega = omega;
    p.k = wavenumber(eps, omega);
    p.b = eps * eps;
    p.trunc = N;
    p.coeffs = CoeffTable::Zero(N + 1, 2);
    const bool canonical =
        gl.params.a == 2.0 && gl.params.d1 == 4.0 && gl.params.d2 == 16.0;
    if (canonical) {
        p.coeffs.row(1) = expansion_modes(eps, omega)[1].transpose();
    } else {
        const double a1 = std::sqrt(std::max(0.0, (gl.e - gl.d * omega * omega) / gl.f));
        p.coeffs.row(1) = (eps * a1 * gl.onset.r0).transpose();
    }
    return p;
}

std::array<Vec2d, 3> expansion_modes(double eps, double omega) {
    const double a1 = canonical_alpha1(omega);
    const double e2 = eps * eps, e3 = e2 * eps;
    std::array<Vec2d, 3> modes;
    modes[0] = Vec2d(0.0, -2.0 * omega * a1 * a1 * e3);
    modes[1] = eps * a1 * Vec2d(2.0, -1.0) +
               e2 * (-(4.0 / 3.0) * omega * a1 * Vec2d(1.0, -2.0) -
                     (5.0 / 9.0) * omega * a1 * Vec2d(2.0, -1.0));
    modes[2] = a1 * a1 * e3 * Vec2d(32.0 * omega / 9.0, -10.0 * omega / 9.0);
    return modes;
}

PeriodicProfile solve_profile(const RDModel& model, double eps, double omega, int N, double tol) {
    return solve_profile(model, gl_coefficients(model), eps, omega, N, tol);
}

PeriodicProfile solve_profile(const RDModel& model, const GLData& gl, double eps, double omega,
                              int N, double tol) {
    if (!(eps >= 0.0) || eps > 0.2) throw ParameterError("eps must lie in [0, 0.2]");
    if (N < 16) throw ParameterError("profile truncation must be at least 16");
    PeriodicProfile p = solve_profile_from(model, initial_guess(gl, eps, omega, N), tol);
    const double a1 = gl.i_e.contains(omega, 1e-14) ? gl_wave_amplitude(gl, omega) : 0.0;
    if (eps > 0.0 && a1 > 1e-8 && max_abs(p.coeffs) < 1e-12)
        p.warnings.push_back("converged to the zero profile although the amplitude is nonzero");
    return p;
}

PeriodicProfile solve_profile_from(const RDModel& model, const PeriodicProfile& guess, double tol,
                                   int max_iter) {
    if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
    PeriodicProfile p = guess;
    const CosineGrid g(p.trunc);
    const GalerkinSystem sys(model, g, p.k, p.b);

    CoeffTable c = p.coeffs;
    CoeffTable R = sys.residual(c);
    double rn = max_abs(R);
    int it = 0;
    for (; it < max_iter && rn > tol; ++it) {
        const Eigen::MatrixXd A = sys.jacobian(c);
        Eigen::VectorXd rhs(2 * (g.N + 1));
        rhs << R.col(0), R.col(1);
        const Eigen::VectorXd dx = A.partialPivLu().solve(-rhs);
        if (!dx.allFinite())
            throw ConvergenceError("profile Newton produced a non-finite step at iteration " +
                                   std::to_string(it));
        CoeffTable step(g.N + 1, 2);
        step.col(0) = dx.head(g.N + 1);
        step.col(1) = dx.tail(g.N + 1);

        double lam = 1.0;
        CoeffTable trial = c + step;
        CoeffTable Rt = sys.residual(trial);
        for (int h = 0; h < 12 && !(max_abs(Rt) < rn); ++h) {
            lam *= 0.5;
            trial = c + lam * step;
            Rt = sys.residual(trial);
        }
        c = trial;
        R = Rt;
        rn = max_abs(R);
    }
    if (!(rn <= tol))
        throw ConvergenceError("profile Newton did not converge: eps=" + std::to_string(p.eps) +
                               " omega=" + std::to_string(p.omega) + " iterations=" +
                               std::to_string(it) + " residual=" + std::to_string(rn) +
                               " |c1|=" + std::to_string(c.row(1).norm()));

    if (c.col(0).sum() < 0.0)
        for (int m = 1; m <= g.N; m += 2) c.row(m) *= -1.0;  // shift by pi

    p.coeffs = c;
    p.iterations = it;
    p.solved = true;
    p.residual = collocation_residual(model, p, g.P);
    return p;
}

double collocation_residual(const RDModel& model, const PeriodicProfile& p, int points) {
    const Mat2d D = model.diffusion();
    double worst = 0.0;
    for (int j = 0; j < points; ++j) {
        const double xi = 2.0 * pi * j / points;
        Vec2d u = Vec2d::Zero(), upp = Vec2d::Zero();
        for (int m = 0; m < p.coeffs.rows(); ++m) {
            const double cm = std::cos(m * xi);
            u += p.coeffs.row(m).transpose() * cm;
            upp -= p.coeffs.row(m).transpose() * (double(m) * m * cm);
        }
        const Vec2d r = p.k * p.k * D * upp + model.reaction<double>(u, p.b);
        worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
    return worst;
}

double amplitude_alpha(const PeriodicProfile& p) {
    if (p.coeffs.rows() < 2) return 0.0;
    return (2.0 * p.coeffs(1, 0) + p.coeffs(1, 1)) / 3.0;
}

Eigen::MatrixXd jacobian_cosine_coeffs(const RDModel& model, const PeriodicProfile& p) {
    const int N = p.trunc;
    const CosineGrid g(N);
    const int modes = 2 * N + 1;
    Eigen::MatrixXd Ct(g.P, modes);
    for (int j = 0; j < g.P; ++j)
        for (int m = 0; m < modes; ++m) Ct(j, m) = std::cos(m * g.xi(j));
    Eigen::MatrixXd Wt = (2.0 / g.P) * Ct.transpose();
    Wt.row(0) *= 0.5;

    const Eigen::MatrixXd U = g.C * p.coeffs;
    Eigen::MatrixXd Jg(g.P, 4);
    for (int j = 0; j < g.P; ++j) {
        const Mat2d J = model.jacobian<double>(U.row(j).transpose(), p.b);
        Jg.row(j) << J(0, 0), J(0, 1), J(1, 0), J(1, 1);
    }
    return Wt * Jg;
}

ExpansionReport validate_expansion(const RDModel& model, const GLData& gl, double omega,
                                   const std::vector<double>& eps_grid, int N) {
    if (!model.is_canonical())
        throw DomainError("the second-order expansion is only available for (a, d1, d2) = (2, 4, 16)");
    if (eps_grid.size() < 4) throw ParameterError("validate_expansion needs at least 4 eps values");
    for (double e : eps_grid)
        if (!(e > 0.0 && e <= 0.1)) throw ParameterError("eps values must lie in (0, 0.1]");

    ExpansionReport rep;
    rep.omega = omega;
    rep.alpha1 = canonical_alpha1(omega);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (double eps : eps_grid) {
        const PeriodicProfile p = solve_profile(model, gl, eps, omega, N);
        ExpansionPoint pt;
        pt.eps = eps;
        pt.alpha = amplitude_alpha(p);
        pt.alpha_predicted = rep.alpha1 * eps - (5.0 / 9.0) * omega * rep.alpha1 * eps * eps;
        pt.error = std::abs(pt.alpha - pt.alpha_predicted);
        pt.residual = p.residual;
        const auto modes = expansion_modes(eps, omega);
        for (int m = 0; m < 3; ++m)
            pt.mode_error[m] = (p.coeffs.row(m).transpose() - modes[m]).cwiseAbs().maxCoeff();
        rep.points.push_back(pt);
        if (pt.error > 0.0) {
            const double x = std::log(eps), y = std::log(pt.error);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
    }
    rep.slope = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx)
                       : std::numeric_limits<double>::quiet_NaN();
    return rep;
}

} // namespace brusselab
