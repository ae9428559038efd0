#ifndef BRUSSELAB_AMPLITUDE_HPP
#define BRUSSELAB_AMPLITUDE_HPP

#include <array>

#include "brusselab/dispersion.hpp"

namespace brusselab {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool closed = true;

    bool contains(double x, double slack = 0.0) const {
        return closed ? (x >= lo - slack && x <= hi + slack) : (x > lo - slack && x < hi + slack);
    }
};

// Coefficients of A_T = d A_XX + e A - f |A|^2 A, with the amplitude
// convention u ~ eps (A e^{i k0 x} + c.c.) r0 / 2.
struct GLData {
    ModelParams params;
    TuringOnset onset;
    double d = 0.0;
    double e = 0.0;
    double f = 0.0;
    Interval i_e;                   // existence band, closed
    Interval i_s;                   // Eckhaus-stable band, open
    Vec2d psi0 = Vec2d::Zero();     // mode-0 second-order correction
    Vec2d psi2 = Vec2d::Zero();     // mode-2k0 second-order correction
};

GLData gl_coefficients(const RDModel& model);

double gl_wave_amplitude(const GLData& gl, double omega);

// Linearization about the GL wave e^{i omega X} sqrt((e - d omega^2)/f) in
// (real, imaginary) perturbation components at Fourier number sigma_hat.
Mat2c gl_matrix(const GLData& gl, double omega, double sigma_hat);

// (lam1_hat, lam2_hat); lam1 continues from -2(e - d omega^2), lam2 from 0.
std::array<double, 2> gl_eigen(const GLData& gl, double omega, double sigma_hat);

} // namespace brusselab

#endif
