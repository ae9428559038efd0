#ifndef BRUSSELAB_REDUCED_HPP
#define BRUSSELAB_REDUCED_HPP

#include <array>

#include "brusselab/types.hpp"

namespace brusselab {

// Closed-form principal parts for the (2, 4, 16) Brusselator.

struct ReducedPrediction {
    double eps = 0.0;
    double omega = 0.0;
    double sigma = 0.0;
    cplx lam1;
    cplx lam2;
    double linear_coeff = 0.0;    // lam^2 + linear_coeff lam + const_coeff = 0
    double const_coeff = 0.0;
    double discriminant = 0.0;    // linear_coeff^2 - 4 const_coeff
    bool real_flag = true;
};

// -(4/3)(1 - 16 omega^2) eps^2
double coperiodic_lambda1(double eps, double omega);

std::array<cplx, 2> h_coefficients(double sigma, cplx lam);

// Roots of lam^2 - (c - (16/3) sigma^2) lam + (32/9) sigma^2 (eps^2 (1 - 48 omega^2) + 2 sigma^2).
// lam1 continues from c and lam2 from 0 at sigma = 0.
ReducedPrediction predicted_roots(double eps, double omega, double sigma);

double reality_discriminant(double eps, double omega, double sigma);

// Positive root in omega^2 of omega^4 + (13/8) omega^2 - 3/256, and its square root.
double reality_omega1();
double reality_omega2();
double reality_boundary();

} // namespace brusselab

#endif
