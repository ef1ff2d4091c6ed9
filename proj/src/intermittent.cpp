#include "batis/intermittent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "batis/errors.hpp"

namespace batis::intermittent {

namespace {

void require_geometry(const Params& p, const char* op) {
    const std::string name(op);
    if (!(p.a > 0.0)) throw DomainError(name + ": target radius a must be positive");
    if (!(p.b > p.a)) throw DomainError(name + ": need b > a");
}

double log_ratio(const Params& p) { return std::log(p.b / p.a); }

struct Vec2 {
    double x;
    double y;
};

double dot(Vec2 p, Vec2 q) { return p.x * q.x + p.y * q.y; }
double norm2(Vec2 p) { return dot(p, p); }

std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

// Radial mirror back into the disc after a short diffusive step.
void reflect_radially(Vec2& p, double b) {
    const double r = std::sqrt(norm2(p));
    if (r > b) {
        const double scale = (2.0 * b - r) / r;
        p.x *= scale;
        p.y *= scale;
    }
}

// Straight flight of the given length with specular reflection at |p| = b.
void fly(Vec2& p, Vec2 dir, double length, double b) {
    while (length > 0.0) {
        const double pw = dot(p, dir);
        const double c = std::min(0.0, norm2(p) - b * b);
        const double hit = -pw + std::sqrt(pw * pw - c);
        if (hit >= length) {
            p.x += length * dir.x;
            p.y += length * dir.y;
            return;
        }
        p.x += hit * dir.x;
        p.y += hit * dir.y;
        const Vec2 n{p.x / b, p.y / b};
        const double dn = dot(dir, n);
        dir.x -= 2.0 * dn * n.x;
        dir.y -= 2.0 * dn * n.y;
        length -= hit;
    }
}

}  // namespace

double optimal_ratio(const Params& p) {
    require_geometry(p, "optimal_ratio");
    if (!(p.D > 0.0)) throw DomainError("optimal_ratio: D must be positive");
    const double l = log_ratio(p);
    if (l == 0.5) throw SingularityError("optimal_ratio: ln(b/a) = 1/2");
    const double bracket = 2.0 - 1.0 / l;
    return p.D / (p.a * p.a) / (bracket * bracket);
}

PhaseTimes min_phase_times(const Params& p) {
    require_geometry(p, "min_phase_times");
    if (!(p.u > 0.0)) throw DomainError("min_phase_times: u must be positive");
    if (!(p.D > 0.0)) throw DomainError("min_phase_times: D must be positive");
    const double l = log_ratio(p);
    if (!(l > 0.5)) throw DomainError("min_phase_times: need b/a > e^(1/2)");
    const double tau_a = p.D / (2.0 * p.u * p.u) * l * l / (2.0 * l - 1.0);
    const double tau_b = p.a / p.u * std::sqrt(l - 0.5);
    return {tau_a, tau_b};
}

SearchTime mean_search_time(const Params& p) {
    require_geometry(p, "mean_search_time");
    if (!(p.u > 0.0)) throw DomainError("mean_search_time: u must be positive");
    if (p.d < 1) throw DomainError("mean_search_time: dimension must be >= 1");
    const double ratio = p.b / p.a;
    switch (p.d) {
        case 1:
            return {2.0 * p.b / p.u * std::sqrt(p.b / (3.0 * p.a)), false};
        case 2:
            return {2.0 * p.b * p.b / (p.a * p.u) * std::sqrt(std::log(ratio)), false};
        case 3:
            return {2.2 * p.b / p.u * ratio * ratio, false};
        default:
            return {p.b / p.u * std::pow(ratio, p.d - 1), true};
    }
}

double simulate_trial(const Params& p, double tau_a, double tau_b, std::uint64_t seed, std::uint64_t trial) {
    auto rng = trial_stream(seed, trial);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::exponential_distribution<double> slow_len(1.0 / tau_a);
    std::exponential_distribution<double> fast_len(1.0 / tau_b);
    auto direction = [&] {
        const double theta = 2.0 * std::numbers::pi * unit(rng);
        return Vec2{std::cos(theta), std::sin(theta)};
    };

    const double radius = p.b * std::sqrt(unit(rng));
    const Vec2 start = direction();
    Vec2 pos{radius * start.x, radius * start.y};

    const double a2 = p.a * p.a;
    const double dt = tau_a / 50.0;
    double clock = 0.0;
    for (;;) {
        // Slow phase: detection-capable diffusive stepping.
        const double duration = slow_len(rng);
        if (norm2(pos) <= a2) return clock;
        double elapsed = 0.0;
        while (elapsed < duration) {
            const double step_time = std::min(dt, duration - elapsed);
            const double step = std::sqrt(2.0 * p.D * step_time);
            const Vec2 dir = direction();
            pos.x += step * dir.x;
            pos.y += step * dir.y;
            reflect_radially(pos, p.b);
            elapsed += step_time;
            if (norm2(pos) <= a2) return clock + elapsed;
        }
        clock += duration;

        // Fast phase: ballistic relocation, blind to the target.
        const double flight = fast_len(rng);
        fly(pos, direction(), p.u * flight, p.b);
        clock += flight;
    }
}

SimulationResult simulate(const Params& p, double tau_a, double tau_b, long trials, std::uint64_t seed) {
    require_geometry(p, "simulate");
    if (p.d != 2) throw DomainError("simulate: only d = 2 is supported");
    if (!(tau_a > 0.0) || !(tau_b > 0.0)) throw DomainError("simulate: phase durations must be positive");
    if (!(p.u > 0.0) || !(p.D > 0.0)) throw DomainError("simulate: u and D must be positive");
    if (trials < 1) throw DomainError("simulate: trials must be >= 1");

    double sum = 0.0;
    double sum_sq = 0.0;
    for (long k = 0; k < trials; ++k) {
        const double t = simulate_trial(p, tau_a, tau_b, seed, static_cast<std::uint64_t>(k));
        sum += t;
        sum_sq += t * t;
    }
    const double n = static_cast<double>(trials);
    const double mean = sum / n;
    const double var = trials > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
    return {mean, std::sqrt(var / n), trials};
}

}  // namespace batis::intermittent
