#ifndef BRUSSELAB_SIMULATE_HPP
#define BRUSSELAB_SIMULATE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "brusselab/profile.hpp"

namespace brusselab {

struct SimState {
    int P = 0;          // grid points, power of two >= 128
    double L = 0.0;     // domain length
    Eigen::VectorXd u1;
    Eigen::VectorXd u2;
    double t = 0.0;
};

// Smallest power of two >= max(128, 32 Q).
int default_grid_points(int cells);

SimState homogeneous_state(int P, double L);

// Q copies of the profile on [0, 2 pi Q / k).
SimState tile_profile(const PeriodicProfile& p, int cells, int P);

// Adds independent uniform noise in [-amplitude, amplitude] to every grid
// value; the generator is seeded deterministically.
void add_random_perturbation(SimState& s, double amplitude, std::uint64_t seed);

struct SimSample {
    double t = 0.0;
    double distance = 0.0;
    double max_field = 0.0;
};

struct Trajectory {
    std::vector<SimSample> samples;
    SimState final_state;
    bool diverged = false;
    double divergence_time = 0.0;
};

using DistanceFn = std::function<double(const SimState&)>;

// Exponential time differencing (second order, Cox-Matthews) on the Fourier
// modes; the linear part -kappa^2 D + J(0, b) is propagated exactly.
// Samples every `stride` steps plus the final time.
Trajectory integrate(const RDModel& model, SimState state, double b, double dt, double t_end,
                     int stride = 1, const DistanceFn& distance = {});

// min over shifts of ||state - tiled profile(. - s)|| / ||tiled profile||
// (grid sums); the best discrete shift is refined to sub-grid accuracy.
double distance_mod_translation(const SimState& state, const PeriodicProfile& p, double k);

// Root mean square of the tiled profile over the grid, summed over components.
double profile_rms(const PeriodicProfile& p, int P);

struct PatternRun {
    Trajectory trajectory;
    double profile_rms = 0.0;
    int P = 0;
    double L = 0.0;
};

// Tiles the profile Q times, perturbs it, integrates at b = eps^2 and records
// the distance modulo translation every sample_dt time units.
PatternRun simulate_pattern(const RDModel& model, const PeriodicProfile& p, int cells, double t_end,
                            double dt, double amplitude, std::uint64_t seed, double sample_dt = 1.0);

} // namespace brusselab

#endif
