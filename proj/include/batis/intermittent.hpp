#pragma once

#include <cstdint>

namespace batis::intermittent {

/// Two-phase search geometry: target radius a inside a domain of radius b,
/// ballistic speed u in the fast phase, diffusion coefficient D in the slow phase.
struct Params {
    double a = 1.0;
    double b = 10.0;
    double u = 1.0;
    double D = 0.5;
    int d = 2;
};

/// D = s^2 / 2 for an isotropic walk with step length s per unit time.
inline double diffusion_from_step(double step_length) { return step_length * step_length / 2.0; }

/// Predicted optimum tau_a / tau_b^2 = (D / a^2) / [2 - 1 / ln(b/a)]^2.
/// Throws DomainError for b <= a, SingularityError when ln(b/a) == 1/2.
double optimal_ratio(const Params& p);

struct PhaseTimes {
    double tau_a;  // slow (detection) phase
    double tau_b;  // fast (relocation) phase
};

/// Minimum mean phase durations. Requires b/a > e^{1/2}.
PhaseTimes min_phase_times(const Params& p);

struct SearchTime {
    double value;
    /// True for d >= 4, where only the order of growth is known and a unit prefactor is assumed.
    bool estimate;
};

/// Mean search time for d = 1, 2, 3 and the (b/u)(b/a)^(d-1) extrapolation beyond.
SearchTime mean_search_time(const Params& p);

struct SimulationResult {
    double mean_time;
    double std_error;
    long trials;
};

/// Monte Carlo estimate of the mean first detection time in 2-D: concentric
/// target and reflecting outer disc, exponential phase durations, detection only
/// during the slow phase. Trial k draws from a stream seeded by (seed, k).
SimulationResult simulate(const Params& p, double tau_a, double tau_b, long trials, std::uint64_t seed);

/// One search; the building block of `simulate`.
double simulate_trial(const Params& p, double tau_a, double tau_b, std::uint64_t seed, std::uint64_t trial);

}  // namespace batis::intermittent
