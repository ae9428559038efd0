#ifndef BRUSSELAB_BLOCH_HPP
#define BRUSSELAB_BLOCH_HPP

#include <array>
#include <string>
#include <vector>

#include "brusselab/profile.hpp"

namespace brusselab {

// In the basis e^{i m xi}, m = -M..M (components interleaved), the Bloch
// operator k^2 D (d_xi + i sigma)^2 + df(u) of an even profile has real
// entries: the diagonal blocks are -k^2 (m + sigma)^2 D + J_0 and the
// coupling n -> m is the (m - n) Fourier coefficient of df(u).
using BlochMatrix = Eigen::MatrixXd;

// M <= 0 selects the default profile.trunc + 8.
int bloch_truncation(const PeriodicProfile& p, int M);

BlochMatrix assemble_bloch(const RDModel& model, const PeriodicProfile& p, double sigma, int M = 0);

struct SpectrumSlice {
    double sigma = 0.0;
    Eigen::VectorXcd eigenvalues;       // descending real part, ties by ascending imag
    std::array<cplx, 2> critical{};     // (lam1, lam2)
    double gap = 0.0;                   // max real part of the remaining eigenvalues
    std::vector<std::string> warnings;
};

SpectrumSlice bloch_spectrum(const RDModel& model, const PeriodicProfile& p, double sigma, int M = 0);

// Slices along a monotone grid with (lam1, lam2) continued by nearest-neighbour matching.
std::vector<SpectrumSlice> track_spectrum(const RDModel& model, const PeriodicProfile& p,
                                          const std::vector<double>& sigma_grid, int M = 0);

struct DispersionFit {
    double omega = 0.0;
    double eps = 0.0;
    double c0 = 0.0;       // Re lam1 at sigma = 0
    double curv1 = 0.0;    // sigma^2 coefficient of Re lam1
    double curv2 = 0.0;    // sigma^2 coefficient of Re lam2
    double max_im = 0.0;
    double fit_residual1 = 0.0;  // max misfit relative to |curv| * sigma_max^2
    double fit_residual2 = 0.0;
    double window = 0.0;
    int points = 0;
};

struct DispersionScan {
    std::vector<SpectrumSlice> slices;
    DispersionFit fit;
};

// Fits Re lam = a0 + a2 sigma^2 + a4 sigma^4 (lam is even in sigma) on
// sigma in [0, min(eps, max grid)].
DispersionScan dispersion_scan(const RDModel& model, const PeriodicProfile& p,
                               const std::vector<double>& sigma_grid, int M = 0);

struct EckhausOptions {
    double eta = 1e-3;
    double delta = 0.25;
    double zero_tol = 1e-9;  // slack for the neutral translation eigenvalue
    int trunc = 32;
    int M = 0;
};

struct StabilityEntry {
    double omega = 0.0;
    bool stable = false;
    double max_re_critical = 0.0;
    double max_excess = 0.0;  // max over sigma of Re lam_j + eta sigma^2
    double gap = 0.0;         // max over sigma of the slice gap
};

struct StabilityMap {
    double eps = 0.0;
    EckhausOptions options;
    std::vector<StabilityEntry> entries;
    double boundary = 0.0;    // first stable -> unstable flip for omega >= 0, NaN if none
    double gl_boundary = 0.0; // sqrt(e / 3d)
    double distance = 0.0;
};

StabilityMap eckhaus_classify(const RDModel& model, const GLData& gl, double eps,
                              const std::vector<double>& omega_grid,
                              const std::vector<double>& sigma_grid,
                              const EckhausOptions& opt = {});

struct RealityReport {
    double eps = 0.0;
    double omega = 0.0;
    double gl_zone_max_im = 0.0;     // over grid points sigma <= eps
    bool gl_zone_real = true;
    double ansatz_sigma = 0.0;       // sqrt(6 omega eps); NaN for omega <= 0
    double ansatz_min_im = 0.0;
    bool ansatz_complex = false;
    std::vector<SpectrumSlice> slices;
};

// |Im lam| <= 1e-7 * max(|lam|, eps^2) counts as real.
double reality_tolerance(cplx lam, double eps);

RealityReport reality_scan(const RDModel& model, const PeriodicProfile& p,
                           const std::vector<double>& sigma_grid, int M = 0);

} // namespace brusselab

#endif
