#include "batis/bat.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "batis/errors.hpp"

namespace batis {

namespace {

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

double pulse_rate(double r0, double gamma, long t) {
    return r0 * (1.0 - std::exp(-gamma * static_cast<double>(t)));
}

void offer_best(BatState& state, std::span<const double> x, const Evaluation& e) {
    if (better(e, state.best)) {
        state.best_x.assign(x.begin(), x.end());
        state.best = e;
    }
}

}  // namespace

void BatConfig::validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError("bat config: " + msg); };
    if (n < 2) fail("n must be >= 2");
    if (!(f_min >= 0.0 && f_min < f_max)) fail("need 0 <= f_min < f_max");
    if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha must lie in (0, 1)");
    if (!(gamma > 0.0)) fail("gamma must be positive");
    if (!(A0 > 0.0)) fail("A0 must be positive");
    if (!(r0 >= 0.0 && r0 <= 1.0)) fail("r0 must lie in [0, 1]");
    if (max_iterations < 0) fail("max_iterations must be >= 0");
    if (q_mode.is_fixed() && !(q_mode.q >= 0.0 && std::isfinite(q_mode.q))) fail("Q must be >= 0");
    if (target_accuracy && !(*target_accuracy >= 0.0)) fail("target_accuracy must be >= 0");
}

double PhaseCounters::ratio() const {
    if (exploration == 0) {
        return std::numeric_limits<double>::infinity();
    }
    return static_cast<double>(exploitation) / static_cast<double>(exploration);
}

double BatState::mean_loudness() const {
    double sum = 0.0;
    for (const auto& b : bats) sum += b.A;
    return sum / static_cast<double>(bats.size());
}

double BatState::mean_pulse_rate() const {
    double sum = 0.0;
    for (const auto& b : bats) sum += b.r;
    return sum / static_cast<double>(bats.size());
}

bool operator==(const TracePoint& a, const TracePoint& b) {
    return a.best_f == b.best_f && a.best_violation == b.best_violation && a.mean_loudness == b.mean_loudness &&
           a.mean_pulse_rate == b.mean_pulse_rate;
}

BatState init(const Problem& problem, const BatConfig& config, std::uint64_t seed) {
    config.validate();
    if (problem.bounds.size() != problem.dimension) {
        throw ContractError("problem bounds do not match its dimension");
    }
    BatState state;
    state.rng.seed(seed);
    state.bats.resize(static_cast<std::size_t>(config.n));
    for (auto& bat : state.bats) {
        bat.x.resize(problem.dimension);
        for (std::size_t i = 0; i < problem.dimension; ++i) {
            const auto& [lo, hi] = problem.bounds[i];
            bat.x[i] = std::uniform_real_distribution<double>(lo, hi)(state.rng);
        }
        bat.v.assign(problem.dimension, 0.0);
        bat.f = frequency_draw(config, uniform01(state.rng));
        bat.A = config.A0;
        bat.r = pulse_rate(config.r0, config.gamma, 0);
        bat.eval = evaluate(problem, bat.x, state.evaluations);
        ++state.counters.exploration;
    }
    state.best_x = state.bats.front().x;
    state.best = state.bats.front().eval;
    for (const auto& bat : state.bats) {
        offer_best(state, bat.x, bat.eval);
    }
    return state;
}

double frequency_draw(const BatConfig& config, double beta) {
    return config.f_min + (config.f_max - config.f_min) * beta;
}

Move move_bat(const Bat& bat, std::span<const double> best_x, double beta, const BatConfig& config,
              const Bounds& bounds) {
    if (best_x.size() != bat.x.size() || bat.v.size() != bat.x.size()) {
        throw ContractError("move_bat: dimension mismatch");
    }
    Move m;
    m.f = frequency_draw(config, beta);
    m.v.resize(bat.x.size());
    m.x.resize(bat.x.size());
    for (std::size_t i = 0; i < bat.x.size(); ++i) {
        m.v[i] = bat.v[i] + (bat.x[i] - best_x[i]) * m.f;
        m.x[i] = bat.x[i] + m.v[i];
    }
    clamp_in_place(m.x, bounds);
    return m;
}

Point local_walk(std::span<const double> best_x, double mean_loudness, const Bounds& bounds, Rng& rng) {
    if (!(mean_loudness >= 0.0)) {
        throw ContractError("local_walk: loudness must be non-negative");
    }
    std::uniform_real_distribution<double> eps(-1.0, 1.0);
    Point x(best_x.begin(), best_x.end());
    for (double& xi : x) {
        xi += eps(rng) * mean_loudness;
    }
    clamp_in_place(x, bounds);
    return x;
}

void update_schedules(Bat& bat, long t, const BatConfig& config) {
    bat.A *= config.alpha;
    bat.r = pulse_rate(config.r0, config.gamma, t);
}

void iterate(BatState& state, const Problem& problem, const BatConfig& config) {
    const long t = state.iteration + 1;
    const double fixed_threshold = 1.0 - config.q_mode.exploitation_probability();
    for (auto& bat : state.bats) {
        const double u1 = uniform01(state.rng);
        const double u2 = uniform01(state.rng);
        const double threshold = config.q_mode.is_fixed() ? fixed_threshold : bat.r;

        // A local walk keeps the bat's velocity and frequency; a flight carries its own.
        Move candidate{bat.v, {}, bat.f};
        if (u1 > threshold) {
            candidate.x = local_walk(state.best_x, state.mean_loudness(), problem.bounds, state.rng);
            ++state.counters.exploitation;
        } else {
            candidate = move_bat(bat, state.best_x, uniform01(state.rng), config, problem.bounds);
            ++state.counters.exploration;
        }

        auto e = evaluate(problem, candidate.x, state.evaluations);
        offer_best(state, candidate.x, e);
        if (better(e, bat.eval) && u2 < bat.A) {
            bat.x = std::move(candidate.x);
            bat.v = std::move(candidate.v);
            bat.f = candidate.f;
            bat.eval = std::move(e);
        }
    }
    // Loudness and pulse rate follow the iteration clock, not the acceptance count:
    // acceptance is itself gated by loudness, so an acceptance-driven decay stalls.
    for (auto& bat : state.bats) {
        update_schedules(bat, t, config);
    }
    state.iteration = t;
}

bool reached_accuracy(const Problem& problem, double best_f, double accuracy) {
    return problem.known_optimum.has_value() &&
           std::abs(best_f - problem.known_optimum->value) <= accuracy;
}

RunResult run(const Problem& problem, const BatConfig& config, std::uint64_t seed) {
    auto state = init(problem, config, seed);
    RunResult result;
    result.seed = seed;
    result.trace.reserve(static_cast<std::size_t>(config.max_iterations) + 1);

    auto record = [&] {
        result.trace.push_back({state.best.objective, state.best.total_violation, state.mean_loudness(),
                                state.mean_pulse_rate()});
    };
    auto done = [&] {
        return config.target_accuracy && state.best.feasible &&
               reached_accuracy(problem, state.best.objective, *config.target_accuracy);
    };

    record();
    while (state.iteration < config.max_iterations && !done()) {
        iterate(state, problem, config);
        record();
    }

    result.reached_target = done();
    result.best_x = state.best_x;
    result.best_f = state.best.objective;
    result.best_eval = state.best;
    result.iterations_used = state.iteration;
    result.evaluations = state.evaluations.count;
    result.counters = state.counters;
    result.realized_Q = state.counters.ratio();
    return result;
}

}  // namespace batis
