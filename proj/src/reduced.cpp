#include "brusselab/reduced.hpp"

#include <cmath>

#include "brusselab/errors.hpp"

namespace brusselab {

double coperiodic_lambda1(double eps, double omega) {
    return -(4.0 / 3.0) * (1.0 - 16.0 * omega * omega) * eps * eps;
}

std::array<cplx, 2> h_coefficients(double sigma, cplx lam) {
    const cplx I(0.0, 1.0);
    const double s2 = sigma * sigma;
    const cplx g = -6.0 - lam - 5.0 * s2;
    const cplx den = g * g - 100.0 * s2;
    if (std::abs(den) < 1e-12) throw PoleError("h-coefficient denominator vanishes");
    return {4.0 * I * sigma * (-6.0 - lam) / den, 2.0 * s2 * (14.0 - lam - 5.0 * s2) / den};
}

ReducedPrediction predicted_roots(double eps, double omega, double sigma) {
    ReducedPrediction r;
    r.eps = eps;
    r.omega = omega;
    r.sigma = sigma;
    const double c = coperiodic_lambda1(eps, omega);
    const double s2 = sigma * sigma;
    const double T = c - (16.0 / 3.0) * s2;
    r.linear_coeff = -T;
    r.const_coeff = (32.0 / 9.0) * s2 * (eps * eps * (1.0 - 48.0 * omega * omega) + 2.0 * s2);
    r.discriminant = T * T - 4.0 * r.const_coeff;
    r.real_flag = r.discriminant >= 0.0;
    if (r.real_flag) {
        const double q = std::sqrt(r.discriminant);
        // stable evaluation of the root of smaller magnitude
        const double big = 0.5 * (T + (T >= 0.0 ? q : -q));
        const double small = big != 0.0 ? r.const_coeff / big : 0.0;
        const double lo = std::min(big, small), hi = std::max(big, small);
        r.lam1 = lo;
        r.lam2 = hi;
    } else {
        const double q = std::sqrt(-r.discriminant);
        r.lam1 = cplx(0.5 * T, -0.5 * q);
        r.lam2 = cplx(0.5 * T, 0.5 * q);
    }
    return r;
}

double reality_discriminant(double eps, double omega, double sigma) {
    const double c = coperiodic_lambda1(eps, omega);
    const double s2 = sigma * sigma, s4 = s2 * s2;
    const double t = s2 / 3.0 - 2.0 * omega * eps;
    return c * c + (1024.0 / 9.0) * s2 * t * t +
           (256.0 / 243.0) * s4 *
               ((179.0 / 3.0) * s4 - 494.0 * omega * s2 * eps + 800.0 * omega * omega * eps * eps -
                5.0 * eps * eps);
}

double reality_omega1() { return (-13.0 + std::sqrt(172.0)) / 16.0; }
double reality_omega2() { return (-13.0 - std::sqrt(172.0)) / 16.0; }
double reality_boundary() { return std::sqrt(reality_omega1()); }

} // namespace brusselab
