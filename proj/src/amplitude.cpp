#include "brusselab/amplitude.hpp"

#include <cmath>

#include "brusselab/errors.hpp"

namespace brusselab {

namespace {

Vec2d solve_mode(const Mat2d& S, const Vec2d& rhs, const char* which) {
    const double scale = S.cwiseAbs().maxCoeff();
    if (std::abs(S.determinant()) <= 1e-12 * scale * scale)
        throw ResonanceError(std::string("singular ") + which +
                             " system: the standard amplitude expansion does not apply");
    return S.partialPivLu().solve(rhs);
}

} // namespace

GLData gl_coefficients(const RDModel& model) {
    GLData gl;
    gl.params = model.params();
    gl.onset = find_turing_onset(model);
    const TuringOnset& on = gl.onset;
    gl.e = on.lam_mu;
    gl.d = -0.5 * on.lam_kk;

    const Vec2d& r = on.r0;
    const Vec2d q = model.n2<double>(r, r, on.mu0);
    const Mat2d M = model.linear_part(on.mu0);
    const Mat2d S2 = -4.0 * on.k0 * on.k0 * model.diffusion() + M;
    gl.psi0 = solve_mode(M, -0.5 * q, "mode-0");
    gl.psi2 = solve_mode(S2, -0.25 * q, "mode-2k0");

    const Vec2d cubic = model.n2<double>(r, gl.psi0, on.mu0) + model.n2<double>(r, gl.psi2, on.mu0) +
                        0.375 * model.n3<double>(r, r, r);
    gl.f = -2.0 * on.l0.dot(cubic) / on.l0.dot(r);

    const double we = std::sqrt(gl.e / gl.d);
    gl.i_e = Interval{-we, we, true};
    const double ws = std::sqrt(gl.e / (3.0 * gl.d));
    gl.i_s = Interval{-ws, ws, false};
    return gl;
}

double gl_wave_amplitude(const GLData& gl, double omega) {
    if (!gl.i_e.contains(omega, 1e-14))
        throw DomainError("omega outside the existence interval");
    return std::sqrt(std::max(0.0, (gl.e - gl.d * omega * omega) / gl.f));
}

Mat2c gl_matrix(const GLData& gl, double omega, double sigma_hat) {
    const double c0 = gl.e - gl.d * omega * omega;
    const double diff = gl.d * sigma_hat * sigma_hat;
    const cplx off(0.0, 2.0 * omega * gl.d * sigma_hat);
    Mat2c A;
    A << cplx(-2.0 * c0 - diff), off,
         -off,                   cplx(-diff);
    return A;
}

std::array<double, 2> gl_eigen(const GLData& gl, double omega, double sigma_hat) {
    const double c0 = gl.e - gl.d * omega * omega;
    const double mean = -c0 - gl.d * sigma_hat * sigma_hat;
    const double off = 2.0 * omega * gl.d * sigma_hat;
    const double rad = std::hypot(c0, off);
    return {mean - rad, mean + rad};
}

} // namespace brusselab
