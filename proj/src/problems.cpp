#include "batis/problems.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "batis/errors.hpp"

namespace batis {

double standing_wave(std::span<const double> x, double beta) {
    double envelope = 0.0;
    double well = 0.0;
    double product = 1.0;
    for (double xi : x) {
        const double t2 = (xi / beta) * (xi / beta);
        const double t4 = t2 * t2;
        envelope += t4 * t4 * t2;
        well += (xi - std::numbers::pi) * (xi - std::numbers::pi);
        const double c = std::cos(xi);
        product *= c * c;
    }
    return 1.0 + (std::exp(-envelope) - 2.0 * std::exp(-well)) * product;
}

Problem standing_wave_problem(std::size_t dimension, double beta) {
    if (dimension == 0) {
        throw ConfigError("standing-wave dimension must be >= 1");
    }
    if (!(beta > 0.0)) {
        throw ConfigError("standing-wave beta must be positive");
    }
    Problem p;
    p.name = "standing-wave:" + std::to_string(dimension);
    p.dimension = dimension;
    p.bounds.assign(dimension, Interval{-20.0, 20.0});
    p.objective = [beta](std::span<const double> x) { return standing_wave(x, beta); };
    // The envelope term sits a hair below 1 at pi, so the minimum value is
    // slightly negative rather than exactly zero; record the actual value.
    Point opt(dimension, std::numbers::pi);
    const double value = standing_wave(opt, beta);
    p.known_optimum = KnownOptimum{std::move(opt), value};
    return p;
}

Problem spring_problem() {
    Problem p;
    p.name = "spring";
    p.dimension = 3;
    p.bounds = {{0.05, 2.0}, {0.25, 1.3}, {2.0, 15.0}};
    p.objective = [](std::span<const double> x) {
        const double w = x[0], d = x[1], L = x[2];
        return (L + 2.0) * w * w * d;
    };
    p.constraints = {
        [](std::span<const double> x) {
            const double w = x[0], d = x[1], L = x[2];
            return 1.0 - d * d * d * L / (71785.0 * std::pow(w, 4));
        },
        [](std::span<const double> x) {
            const double w = x[0], d = x[1], L = x[2];
            return 1.0 - 140.45 * w / (d * d * L);
        },
        [](std::span<const double> x) {
            const double w = x[0], d = x[1];
            return 2.0 * (w + d) / 3.0 - 1.0;
        },
        [](std::span<const double> x) {
            const double w = x[0], d = x[1];
            return (4.0 * d * d - w * d) / (12566.0 * (d * w * w * w - std::pow(w, 4))) +
                   1.0 / (5108.0 * w * w) - 1.0;
        },
    };
    p.known_optimum = KnownOptimum{{0.051690, 0.356750, 11.287126}, 0.012665};
    return p;
}

namespace {

struct BeamQuantities {
    double sigma;
    double delta;
    double tau;
    double buckling;
};

BeamQuantities beam_quantities(std::span<const double> x) {
    const double w = x[0], L = x[1], d = x[2], h = x[3];
    const double sigma = 504000.0 / (h * d * d);
    const double moment = 6000.0 * (14.0 + L / 2.0);
    const double radius = 0.5 * std::sqrt(L * L + (w + d) * (w + d));
    const double inertia = std::sqrt(2.0) * w * L * (L * L / 6.0 + (w + d) * (w + d) / 2.0);
    const double delta = 65856.0 / (30000.0 * h * d * d * d);
    const double secondary = moment * radius / inertia;
    const double primary = 6000.0 / (std::sqrt(2.0) * w * L);
    const double tau =
        std::sqrt(primary * primary + primary * secondary * L / radius + secondary * secondary);
    // 4.013 E / L^2 with E = 30e6 psi and L = 14 in (~0.61423e6).
    constexpr double buckling_coefficient = 4.013 * 30.0e6 / 196.0;
    const double buckling =
        buckling_coefficient * d * h * h * h / 6.0 * (1.0 - d * std::sqrt(30.0 / 48.0) / 28.0);
    return {sigma, delta, tau, buckling};
}

}  // namespace

Problem welded_beam_problem() {
    Problem p;
    p.name = "welded-beam";
    p.dimension = 4;
    p.bounds = {{0.1, 2.0}, {0.1, 10.0}, {0.1, 10.0}, {0.1, 2.0}};
    p.objective = [](std::span<const double> x) {
        const double w = x[0], L = x[1], d = x[2], h = x[3];
        return 1.10471 * w * w * L + 0.04811 * d * h * (14.0 + L);
    };
    p.constraints = {
        [](std::span<const double> x) { return x[0] - x[3]; },
        [](std::span<const double> x) { return beam_quantities(x).delta - 0.25; },
        [](std::span<const double> x) { return beam_quantities(x).tau - 13600.0; },
        [](std::span<const double> x) { return beam_quantities(x).sigma - 30000.0; },
        [](std::span<const double> x) {
            const double w = x[0], L = x[1], d = x[2], h = x[3];
            return 0.10471 * w * w + 0.04811 * h * d * (14.0 + L) - 5.0;
        },
        [](std::span<const double> x) { return 0.125 - x[0]; },
        [](std::span<const double> x) { return 6000.0 - beam_quantities(x).buckling; },
    };
    p.known_optimum = KnownOptimum{
        {0.20572963978, 3.47048866563, 9.03662391036, 0.20572963979}, 1.724852308598};
    return p;
}

Problem make_problem(std::string_view name) {
    if (name == "spring") {
        return spring_problem();
    }
    if (name == "welded-beam") {
        return welded_beam_problem();
    }
    constexpr std::string_view wave = "standing-wave";
    if (name.substr(0, wave.size()) == wave) {
        auto rest = name.substr(wave.size());
        if (rest.empty()) {
            return standing_wave_problem(2);
        }
        if (rest.front() != ':') {
            throw ConfigError("unknown problem: " + std::string(name));
        }
        rest.remove_prefix(1);
        std::size_t d = 0;
        const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), d);
        if (ec != std::errc{} || ptr != rest.data() + rest.size() || d == 0) {
            throw ConfigError("bad standing-wave dimension in: " + std::string(name));
        }
        return standing_wave_problem(d);
    }
    throw ConfigError("unknown problem: " + std::string(name));
}

Evaluation evaluate(const Problem& problem, std::span<const double> x) {
    if (x.size() != problem.dimension) {
        throw ContractError("point has " + std::to_string(x.size()) + " coordinates, problem '" +
                            problem.name + "' expects " + std::to_string(problem.dimension));
    }
    Evaluation e;
    e.objective = problem.objective(x);
    e.violations.reserve(problem.constraints.size());
    for (const auto& g : problem.constraints) {
        const double v = std::max(0.0, g(x));
        e.violations.push_back(v);
        e.total_violation += v;
    }
    e.feasible = e.total_violation <= kFeasibilityTolerance;
    return e;
}

Evaluation evaluate(const Problem& problem, std::span<const double> x, EvaluationCounter& counter) {
    auto e = evaluate(problem, x);
    ++counter.count;
    return e;
}

std::weak_ordering compare(const Evaluation& a, const Evaluation& b) {
    if (a.feasible != b.feasible) {
        return a.feasible ? std::weak_ordering::less : std::weak_ordering::greater;
    }
    const double lhs = a.feasible ? a.objective : a.total_violation;
    const double rhs = b.feasible ? b.objective : b.total_violation;
    if (lhs < rhs) {
        return std::weak_ordering::less;
    }
    if (rhs < lhs) {
        return std::weak_ordering::greater;
    }
    return std::weak_ordering::equivalent;
}

Point clamp_to_bounds(std::span<const double> x, const Bounds& bounds) {
    Point out(x.begin(), x.end());
    clamp_in_place(out, bounds);
    return out;
}

void clamp_in_place(std::span<double> x, const Bounds& bounds) {
    if (x.size() != bounds.size()) {
        throw ContractError("clamp: dimension mismatch");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = std::clamp(x[i], bounds[i].lo, bounds[i].hi);
    }
}

bool within_bounds(std::span<const double> x, const Bounds& bounds) {
    if (x.size() != bounds.size()) {
        return false;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= bounds[i].lo && x[i] <= bounds[i].hi)) {
            return false;
        }
    }
    return true;
}

std::vector<double> constraint_values(const Problem& problem, std::span<const double> x) {
    if (x.size() != problem.dimension) {
        throw ContractError("constraint_values: dimension mismatch");
    }
    std::vector<double> out;
    out.reserve(problem.constraints.size());
    for (const auto& g : problem.constraints) {
        out.push_back(g(x));
    }
    return out;
}

}  // namespace batis
