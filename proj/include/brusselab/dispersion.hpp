#ifndef BRUSSELAB_DISPERSION_HPP
#define BRUSSELAB_DISPERSION_HPP

#include <array>

#include "brusselab/model.hpp"

namespace brusselab {

struct TuringOnset {
    double mu0 = 0.0;
    double k0 = 0.0;
    Vec2d r0 = Vec2d::Zero();   // right kernel vector, r0(0) = 2
    Vec2d l0 = Vec2d::Zero();   // left kernel vector, l0.dot(r0) = 3
    double lam_mu = 0.0;
    double lam_kk = 0.0;
    int newton_iterations = 0;
    double fd_lam_mu = 0.0;     // central-difference cross-checks
    double fd_lam_kk = 0.0;
};

// -k^2 D + M_mu
Mat2d symbol(const RDModel& model, double mu, double k);

// Eigenvalues of a real 2x2 matrix by the quadratic formula, ordered by
// descending real part, ties broken by ascending imaginary part.
std::array<cplx, 2> eig2(const Mat2d& A);

std::array<cplx, 2> dispersion_eigen(const RDModel& model, double mu, double k);

// Solves det S = 0, d/dk det S = 0 for S = symbol(mu, k).
TuringOnset find_turing_onset(const RDModel& model);

// det of the symbol and its partial derivatives
struct SymbolDet {
    double det, det_mu, det_k, det_mk, det_kk, trace;
};
SymbolDet symbol_det(const RDModel& model, double mu, double k);

} // namespace brusselab

#endif
