#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "batis/problems.hpp"

namespace batis {

/// How the exploitation (local walk) branch is chosen.
struct QMode {
    enum class Kind { Emergent, Fixed };
    Kind kind = Kind::Emergent;
    double q = 0.0;  // exploitation/exploration ratio when kind == Fixed

    static QMode emergent() { return {}; }
    static QMode fixed(double q) { return {Kind::Fixed, q}; }

    bool is_fixed() const { return kind == Kind::Fixed; }
    /// Probability of taking the local-walk branch in fixed mode: Q/(1+Q).
    double exploitation_probability() const { return q / (1.0 + q); }
};

struct BatConfig {
    int n = 15;
    double f_min = 0.0;
    double f_max = 1.0;
    double alpha = 0.9;  // loudness decay
    double gamma = 0.9;  // pulse-rate growth
    double A0 = 1.0;
    double r0 = 0.5;
    QMode q_mode = QMode::emergent();
    long max_iterations = 1000;
    /// Stop once |best_f - known optimum| <= target_accuracy (needs a known optimum).
    std::optional<double> target_accuracy;

    /// Throws ConfigError when any field is out of range.
    void validate() const;
};

struct Bat {
    Point x;
    Point v;
    double f = 0.0;
    double A = 1.0;
    double r = 0.0;
    Evaluation eval;
};

struct PhaseCounters {
    std::uint64_t exploitation = 0;
    std::uint64_t exploration = 0;

    std::uint64_t total() const { return exploitation + exploration; }
    /// exploitation / exploration; infinity when nothing has explored yet.
    double ratio() const;
};

using Rng = std::mt19937_64;

struct BatState {
    std::vector<Bat> bats;
    Point best_x;
    Evaluation best;
    long iteration = 0;
    Rng rng;
    PhaseCounters counters;
    EvaluationCounter evaluations;

    double mean_loudness() const;
    double mean_pulse_rate() const;
};

struct TracePoint {
    double best_f;
    double best_violation;
    double mean_loudness;
    double mean_pulse_rate;
};

struct RunResult {
    Point best_x;
    double best_f = 0.0;
    Evaluation best_eval;
    long iterations_used = 0;
    std::uint64_t evaluations = 0;
    PhaseCounters counters;
    double realized_Q = 0.0;
    /// Entry t is the state after t iterations; entry 0 is the initial population.
    std::vector<TracePoint> trace;
    std::uint64_t seed = 0;
    bool reached_target = false;
};

bool operator==(const TracePoint& a, const TracePoint& b);

BatState init(const Problem& problem, const BatConfig& config, std::uint64_t seed);

double frequency_draw(const BatConfig& config, double beta);

struct Move {
    Point v;
    Point x;
    double f;
};

/// Frequency-tuned velocity update: v' = v + (x - x*) f, x' = clamp(x + v').
Move move_bat(const Bat& bat, std::span<const double> best_x, double beta, const BatConfig& config,
              const Bounds& bounds);

/// Uniform [-1, 1] step scaled by the mean loudness, around the selected best.
Point local_walk(std::span<const double> best_x, double mean_loudness, const Bounds& bounds, Rng& rng);

/// Loudness decay A <- alpha A and pulse rate r = r0 (1 - exp(-gamma t)), applied once per iteration t.
void update_schedules(Bat& bat, long t, const BatConfig& config);

/// Advances every bat by one candidate evaluation.
void iterate(BatState& state, const Problem& problem, const BatConfig& config);

RunResult run(const Problem& problem, const BatConfig& config, std::uint64_t seed);

/// |best_f - known optimum| <= accuracy. False when the problem has no known optimum.
bool reached_accuracy(const Problem& problem, double best_f, double accuracy);

}  // namespace batis
