#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace batis {

using Point = std::vector<double>;

struct Interval {
    double lo;
    double hi;
};

using Bounds = std::vector<Interval>;

/// Feasibility threshold used when ranking candidates.
inline constexpr double kFeasibilityTolerance = 1e-9;
/// Looser threshold for validating published optima, whose printed digits leave
/// some constraints marginally active.
inline constexpr double kPublishedOptimumTolerance = 1e-3;

using Objective = std::function<double(std::span<const double>)>;
/// Inequality constraint g(x) <= 0.
using Constraint = std::function<double(std::span<const double>)>;

struct KnownOptimum {
    Point x;
    double value;
};

struct Problem {
    std::string name;
    std::size_t dimension = 0;
    Bounds bounds;
    Objective objective;
    std::vector<Constraint> constraints;
    std::optional<KnownOptimum> known_optimum;
};

struct Evaluation {
    double objective = 0.0;
    std::vector<double> violations;  // max(0, g_k(x)) per constraint
    double total_violation = 0.0;
    bool feasible = true;
};

/// Per-run evaluation tally. One instance per run context; not shared between workers.
struct EvaluationCounter {
    std::uint64_t count = 0;
};

double standing_wave(std::span<const double> x, double beta = 15.0);

/// Standing-wave function on [-20, 20]^d with optimum recorded at (pi, ..., pi).
Problem standing_wave_problem(std::size_t dimension, double beta = 15.0);

/// Tension/compression spring: variables (w, d, L).
Problem spring_problem();

/// Welded beam: variables (w, L, d, h).
Problem welded_beam_problem();

/// Resolves "standing-wave", "standing-wave:<d>", "spring" or "welded-beam".
/// Throws ConfigError for unknown names or malformed suffixes.
Problem make_problem(std::string_view name);

Evaluation evaluate(const Problem& problem, std::span<const double> x);
Evaluation evaluate(const Problem& problem, std::span<const double> x, EvaluationCounter& counter);

/// Deb feasibility ordering; `less` means `a` is the better candidate.
/// Feasible beats infeasible, feasibles rank by objective, infeasibles by total violation.
std::weak_ordering compare(const Evaluation& a, const Evaluation& b);

inline bool better(const Evaluation& a, const Evaluation& b) { return compare(a, b) < 0; }

Point clamp_to_bounds(std::span<const double> x, const Bounds& bounds);
void clamp_in_place(std::span<double> x, const Bounds& bounds);

bool within_bounds(std::span<const double> x, const Bounds& bounds);

/// Raw g_k(x) values (not clipped at zero).
std::vector<double> constraint_values(const Problem& problem, std::span<const double> x);

}  // namespace batis
