#ifndef BRUSSELAB_PROFILE_HPP
#define BRUSSELAB_PROFILE_HPP

#include <string>
#include <vector>

#include "brusselab/amplitude.hpp"

namespace brusselab {

// Stationary 2pi-periodic even solution of k^2 D u'' + f(u; b) = 0 with
// b = eps^2, u_j(xi) = sum_m coeffs(m, j) cos(m xi).
struct PeriodicProfile {
    double eps = 0.0;
    double omega = 0.0;
    double k = 0.5;
    double b = 0.0;
    CoeffTable coeffs;
    int trunc = 0;
    double residual = 0.0;
    int iterations = 0;
    bool solved = false;
    std::vector<std::string> warnings;

    Vec2d value(double xi) const;
    Vec2d derivative(double xi) const;
};

double wavenumber(double eps, double omega);

// Collocation grid for cosine series of order N on P = 4(N+1) points.
struct CosineGrid {
    explicit CosineGrid(int N);
    int N;
    int P;
    Eigen::VectorXd xi;
    Eigen::MatrixXd C;  // P x (N+1), C(j, m) = cos(m xi_j)
    Eigen::MatrixXd W;  // (N+1) x P, cosine projection; W * C = I
};

// Two leading orders of the existence expansion; only the first order for
// models other than (2, 4, 16).
PeriodicProfile initial_guess(const GLData& gl, double eps, double omega, int N);

PeriodicProfile solve_profile(const RDModel& model, double eps, double omega, int N = 32,
                              double tol = 1e-12);
PeriodicProfile solve_profile(const RDModel& model, const GLData& gl, double eps, double omega,
                              int N = 32, double tol = 1e-12);
// Newton from an explicit starting table.
PeriodicProfile solve_profile_from(const RDModel& model, const PeriodicProfile& guess,
                                   double tol = 1e-12, int max_iter = 25);

// sup-norm of k^2 D u'' + f(u) on the given number of equispaced points
double collocation_residual(const RDModel& model, const PeriodicProfile& p, int points);

// <cos xi (2,1), u> with weight 1/(3 pi)
double amplitude_alpha(const PeriodicProfile& p);

// Cosine coefficients of the entries of df(u(xi)); row m, column 2*i + j.
Eigen::MatrixXd jacobian_cosine_coeffs(const RDModel& model, const PeriodicProfile& p);

struct ExpansionPoint {
    double eps = 0.0;
    double alpha = 0.0;
    double alpha_predicted = 0.0;
    double error = 0.0;
    double residual = 0.0;
    // max-norm deviation of cosine modes 0, 1, 2 from the expansion
    std::array<double, 3> mode_error{};
};

struct ExpansionReport {
    double omega = 0.0;
    double alpha1 = 0.0;
    std::vector<ExpansionPoint> points;
    double slope = 0.0;  // NaN when all errors vanish
};

// Leading-order predictions of cosine modes 0, 1, 2 for (2, 4, 16).
std::array<Vec2d, 3> expansion_modes(double eps, double omega);

ExpansionReport validate_expansion(const RDModel& model, const GLData& gl, double omega,
                                   const std::vector<double>& eps_grid, int N = 32);

} // namespace brusselab

#endif
