#include "brusselab/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "brusselab/errors.hpp"

namespace brusselab {

Mat2d symbol(const RDModel& model, double mu, double k) {
    return -k * k * model.diffusion() + model.linear_part(mu);
}

std::array<cplx, 2> eig2(const Mat2d& A) {
    const double tr = A.trace();
    const double det = A.determinant();
    const double disc = 0.25 * tr * tr - det;
    std::array<cplx, 2> ev;
    if (disc >= 0.0) {
        // avoid cancellation in the smaller root
        const double s = std::sqrt(disc);
        const double big = 0.5 * tr + (tr >= 0.0 ? s : -s);
        const double small = big != 0.0 ? det / big : 0.0;
        ev = {cplx(std::max(big, small)), cplx(std::min(big, small))};
    } else {
        const double s = std::sqrt(-disc);
        ev = {cplx(0.5 * tr, -s), cplx(0.5 * tr, s)};
    }
    return ev;
}

std::array<cplx, 2> dispersion_eigen(const RDModel& model, double mu, double k) {
    return eig2(symbol(model, mu, k));
}

SymbolDet symbol_det(const RDModel& model, double mu, double k) {
    const Mat2d S = symbol(model, mu, k);
    const double d1 = model.params().d1, d2 = model.params().d2;
    const double s11 = S(0, 0), s22 = S(1, 1);
    const double s11k = -2.0 * d1 * k, s22k = -2.0 * d2 * k;
    SymbolDet r;
    r.det = S.determinant();
    r.det_mu = s22 + S(0, 1);  // d s11 = 1, d s21 = -1; s12 and s22 are mu-free
    r.det_k = s11k * s22 + s11 * s22k;
    r.det_mk = s22k;
    r.det_kk = -2.0 * d1 * s22 + 2.0 * s11k * s22k - 2.0 * d2 * s11;
    r.trace = s11 + s22;
    return r;
}

namespace {

double leading_real(const RDModel& model, double mu, double k) {
    return dispersion_eigen(model, mu, k)[0].real();
}

} // namespace

TuringOnset find_turing_onset(const RDModel& model) {
    // Coarse guess: lowest mu whose row of the grid reaches det <= 0.
    const int n = 200;
    double mu = std::numeric_limits<double>::quiet_NaN(), k = 0.0;
    double best = std::numeric_limits<double>::infinity();
    double best_mu = 0.0, best_k = 0.0;
    for (int i = 0; i < n && std::isnan(mu); ++i) {
        const double m = -1.0 + 3.0 * i / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double kk = 0.05 + 1.95 * j / (n - 1);
            const double det = symbol_det(model, m, kk).det;
            if (det <= 0.0) {
                mu = m;
                k = kk;
                break;
            }
            if (det < best) {
                best = det;
                best_mu = m;
                best_k = kk;
            }
        }
    }
    if (std::isnan(mu)) {
        mu = best_mu;
        k = best_k;
    }

    TuringOnset on;
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
        const SymbolDet s = symbol_det(model, mu, k);
        const Eigen::Vector2d F(s.det, s.det_k);
        on.newton_iterations = it;
        if (F.cwiseAbs().maxCoeff() <= 1e-12) {
            converged = true;
            break;
        }
        Eigen::Matrix2d J;
        J << s.det_mu, s.det_k, s.det_mk, s.det_kk;
        const Eigen::Vector2d step = J.fullPivLu().solve(-F);
        if (!step.allFinite()) break;
        mu += step(0);
        k += step(1);
    }
    if (!converged || !(k > 0.0))
        throw ConvergenceError("Turing onset not found: Newton did not converge in 50 iterations");

    on.mu0 = mu;
    on.k0 = k;

    const SymbolDet s = symbol_det(model, mu, k);
    on.lam_mu = s.det_mu / s.trace;
    on.lam_kk = s.det_kk / s.trace;
    if (!(on.lam_kk < 0.0)) throw DegenerateOnsetError("degenerate onset: d2 lambda/dk2 >= 0");

    // The homogeneous state must be stable just below onset.
    for (int j = 0; j <= 400; ++j) {
        const double kk = 4.0 * k * j / 400.0;
        if (leading_real(model, mu - 1e-3, kk) >= 0.0)
            throw DegenerateOnsetError("homogeneous state is not stable below the Turing onset");
    }

    const double h = 1e-4;
    on.fd_lam_mu = (leading_real(model, mu + h, k) - leading_real(model, mu - h, k)) / (2.0 * h);
    on.fd_lam_kk = (leading_real(model, mu, k + h) - 2.0 * leading_real(model, mu, k) +
                    leading_real(model, mu, k - h)) / (h * h);

    const Mat2d S = symbol(model, mu, k);
    Vec2d r(-S(0, 1), S(0, 0));
    if (S.row(1).norm() > S.row(0).norm()) r = Vec2d(-S(1, 1), S(1, 0));
    on.r0 = r * (2.0 / r(0));
    Vec2d l(-S(1, 0), S(0, 0));
    if (S.col(1).norm() > S.col(0).norm()) l = Vec2d(-S(1, 1), S(0, 1));
    on.l0 = l * (3.0 / l.dot(on.r0));
    return on;
}

} // namespace brusselab
