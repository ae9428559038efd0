#include "brusselab/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "brusselab/errors.hpp"

namespace brusselab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool spectral_order(const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() < b.imag();
}

// Assign (lam1, lam2) from the two leading candidates so that they continue
// prev with the least total displacement.
void continue_pair(SpectrumSlice& s, const std::array<cplx, 2>& prev) {
    const cplx a = s.critical[0], b = s.critical[1];
    const double keep = std::abs(a - prev[0]) + std::abs(b - prev[1]);
    const double swap = std::abs(b - prev[0]) + std::abs(a - prev[1]);
    if (swap < keep) s.critical = {b, a};
    if (std::abs(swap - keep) <= 1e-12 * (1.0 + keep) && a != b)
        s.warnings.push_back("critical pair labels ambiguous under continuation");
}

} // namespace

int bloch_truncation(const PeriodicProfile& p, int M) {
    return M > 0 ? M : p.trunc + 8;
}

BlochMatrix assemble_bloch(const RDModel& model, const PeriodicProfile& p, double sigma, int M) {
    M = bloch_truncation(p, M);
    if (M < p.trunc)
        throw TruncationError("Bloch truncation M=" + std::to_string(M) +
                              " is below the profile truncation " + std::to_string(p.trunc));
    const Eigen::MatrixXd jc = jacobian_cosine_coeffs(model, p);
    const int band = static_cast<int>(jc.rows()) - 1;
    const Mat2d D = model.diffusion();
    const int n = 2 * M + 1;
    BlochMatrix A = BlochMatrix::Zero(2 * n, 2 * n);
    for (int pm = -M; pm <= M; ++pm) {
        const int i = pm + M;
        for (int qm = -M; qm <= M; ++qm) {
            const int d = std::abs(pm - qm);
            if (d > band) continue;
            const double w = d == 0 ? 1.0 : 0.5;
            const int j = qm + M;
            A(2 * i, 2 * j) = w * jc(d, 0);
            A(2 * i, 2 * j + 1) = w * jc(d, 1);
            A(2 * i + 1, 2 * j) = w * jc(d, 2);
            A(2 * i + 1, 2 * j + 1) = w * jc(d, 3);
        }
        const double s2 = p.k * p.k * (pm + sigma) * (pm + sigma);
        A(2 * i, 2 * i) -= s2 * D(0, 0);
        A(2 * i + 1, 2 * i + 1) -= s2 * D(1, 1);
    }
    return A;
}

SpectrumSlice bloch_spectrum(const RDModel& model, const PeriodicProfile& p, double sigma, int M) {
    const BlochMatrix A = assemble_bloch(model, p, sigma, M);
    Eigen::EigenSolver<BlochMatrix> es(A, false);
    if (es.info() != Eigen::Success)
        throw NumericError("Bloch eigensolver failed at sigma=" + std::to_string(sigma));

    SpectrumSlice s;
    s.sigma = sigma;
    std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), spectral_order);
    s.eigenvalues = Eigen::Map<Eigen::VectorXcd>(ev.data(), static_cast<Eigen::Index>(ev.size()));
    s.critical = {ev[1], ev[0]};
    s.gap = ev.size() > 2 ? ev[2].real() : -std::numeric_limits<double>::infinity();
    if (ev.size() > 2 &&
        (std::abs(ev[2] - ev[0]) <= 1e-6 || std::abs(ev[2] - ev[1]) <= 1e-6))
        s.warnings.push_back("third eigenvalue within 1e-6 of the critical pair");
    return s;
}

std::vector<SpectrumSlice> track_spectrum(const RDModel& model, const PeriodicProfile& p,
                                          const std::vector<double>& sigma_grid, int M) {
    for (std::size_t i = 1; i < sigma_grid.size(); ++i)
        if (!(sigma_grid[i] > sigma_grid[i - 1])) throw ParameterError("sigma grid must be increasing");
    std::vector<SpectrumSlice> out;
    out.reserve(sigma_grid.size());
    for (double s : sigma_grid) out.push_back(bloch_spectrum(model, p, s, M));
    for (std::size_t i = 1; i < out.size(); ++i) continue_pair(out[i], out[i - 1].critical);
    return out;
}

namespace {

// Least squares Re-part fit y = a0 + a2 s^2 (+ a4 s^4); returns (a0, a2, misfit).
std::array<double, 3> even_fit(const std::vector<double>& s, const std::vector<double>& y) {
    const int n = static_cast<int>(s.size());
    const int cols = n >= 4 ? 3 : 2;
    Eigen::MatrixXd V(n, cols);
    Eigen::VectorXd Y(n);
    for (int i = 0; i < n; ++i) {
        const double s2 = s[i] * s[i];
        V(i, 0) = 1.0;
        V(i, 1) = s2;
        if (cols == 3) V(i, 2) = s2 * s2;
        Y(i) = y[i];
    }
    const Eigen::VectorXd c = V.colPivHouseholderQr().solve(Y);
    const double misfit = (V * c - Y).cwiseAbs().maxCoeff();
    return {c(0), c(1), misfit};
}

} // namespace

DispersionScan dispersion_scan(const RDModel& model, const PeriodicProfile& p,
                               const std::vector<double>& sigma_grid, int M) {
    if (sigma_grid.empty() || sigma_grid.front() < 0.0 || sigma_grid.back() > 0.25)
        throw ParameterError("dispersion scan grid must lie in [0, 0.25]");
    DispersionScan scan;
    scan.slices = track_spectrum(model, p, sigma_grid, M);

    DispersionFit& fit = scan.fit;
    fit.omega = p.omega;
    fit.eps = p.eps;
    fit.window = std::min(p.eps, sigma_grid.back());
    std::vector<double> s, y1, y2;
    for (const auto& sl : scan.slices) {
        if (sl.sigma > fit.window * (1.0 + 1e-12)) continue;
        s.push_back(sl.sigma);
        y1.push_back(sl.critical[0].real());
        y2.push_back(sl.critical[1].real());
        fit.max_im = std::max({fit.max_im, std::abs(sl.critical[0].imag()), std::abs(sl.critical[1].imag())});
    }
    fit.points = static_cast<int>(s.size());
    if (fit.points < 3) throw ParameterError("need at least 3 grid points in [0, eps] to fit curvatures");
    const auto f1 = even_fit(s, y1);
    const auto f2 = even_fit(s, y2);
    fit.c0 = f1[0];
    fit.curv1 = f1[1];
    fit.curv2 = f2[1];
    const double w2 = fit.window * fit.window;
    fit.fit_residual1 = f1[2] / std::max(std::abs(fit.curv1) * w2, 1e-300);
    fit.fit_residual2 = f2[2] / std::max(std::abs(fit.curv2) * w2, 1e-300);
    return scan;
}

StabilityMap eckhaus_classify(const RDModel& model, const GLData& gl, double eps,
                              const std::vector<double>& omega_grid,
                              const std::vector<double>& sigma_grid, const EckhausOptions& opt) {
    for (std::size_t i = 1; i < omega_grid.size(); ++i)
        if (!(omega_grid[i] > omega_grid[i - 1])) throw ParameterError("omega grid must be increasing");
    StabilityMap map;
    map.eps = eps;
    map.options = opt;
    for (double w : omega_grid) {
        const PeriodicProfile p = solve_profile(model, gl, eps, w, opt.trunc);
        const auto slices = track_spectrum(model, p, sigma_grid, opt.M);
        StabilityEntry e;
        e.omega = w;
        e.max_re_critical = -std::numeric_limits<double>::infinity();
        e.max_excess = -std::numeric_limits<double>::infinity();
        e.gap = -std::numeric_limits<double>::infinity();
        for (const auto& sl : slices) {
            for (const cplx& l : sl.critical) {
                e.max_re_critical = std::max(e.max_re_critical, l.real());
                e.max_excess = std::max(e.max_excess, l.real() + opt.eta * sl.sigma * sl.sigma);
            }
            e.gap = std::max(e.gap, sl.gap);
        }
        e.stable = e.max_excess <= opt.zero_tol && e.gap < -opt.delta;
        map.entries.push_back(e);
    }
    map.boundary = kNaN;
    for (std::size_t i = 1; i < map.entries.size(); ++i) {
        if (map.entries[i].omega < 0.0) continue;
        if (map.entries[i - 1].stable && !map.entries[i].stable) {
            map.boundary = 0.5 * (map.entries[i - 1].omega + map.entries[i].omega);
            break;
        }
    }
    map.gl_boundary = gl.i_s.hi;
    map.distance = std::abs(map.boundary - map.gl_boundary);
    return map;
}

double reality_tolerance(cplx lam, double eps) {
    return 1e-7 * std::max(std::abs(lam), eps * eps);
}

RealityReport reality_scan(const RDModel& model, const PeriodicProfile& p,
                           const std::vector<double>& sigma_grid, int M) {
    RealityReport rep;
    rep.eps = p.eps;
    rep.omega = p.omega;
    rep.slices = track_spectrum(model, p, sigma_grid, M);
    for (const auto& sl : rep.slices) {
        if (sl.sigma > p.eps * (1.0 + 1e-12)) continue;
        for (const cplx& l : sl.critical) {
            rep.gl_zone_max_im = std::max(rep.gl_zone_max_im, std::abs(l.imag()));
            if (std::abs(l.imag()) > reality_tolerance(l, p.eps)) rep.gl_zone_real = false;
        }
    }
    rep.ansatz_sigma = kNaN;
    rep.ansatz_min_im = kNaN;
    if (p.omega > 0.0 && p.eps > 0.0) {
        rep.ansatz_sigma = std::sqrt(6.0 * p.omega * p.eps);
        const SpectrumSlice sl = bloch_spectrum(model, p, rep.ansatz_sigma, M);
        rep.ansatz_min_im = std::min(std::abs(sl.critical[0].imag()), std::abs(sl.critical[1].imag()));
        rep.ansatz_complex = true;
        for (const cplx& l : sl.critical)
            if (std::abs(l.imag()) <= reality_tolerance(l, p.eps)) rep.ansatz_complex = false;
    }
    return rep;
}

} // namespace brusselab
