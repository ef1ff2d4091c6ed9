#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "batis/errors.hpp"
#include "batis/problems.hpp"

using namespace batis;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent reference values computed with 30-digit arithmetic.
constexpr double kWaveAtOrigin = 1.99999999464942401785;
constexpr double kWaveAt12 = 1.05027544892205373763;
constexpr double kWaveAtPi2d = -3.24800030625619949684e-7;

Evaluation feasible_eval(double f) { return Evaluation{f, {}, 0.0, true}; }
Evaluation infeasible_eval(double v) { return Evaluation{0.0, {v}, v, false}; }

}  // namespace

TEST_CASE("standing wave reference points") {
    CHECK(standing_wave(std::vector{0.0, 0.0}) == doctest::Approx(kWaveAtOrigin).epsilon(1e-14));
    CHECK(standing_wave(std::vector{1.0, 2.0}) == doctest::Approx(kWaveAt12).epsilon(1e-13));
    CHECK(standing_wave(std::vector{kPi, kPi}) == doctest::Approx(kWaveAtPi2d).epsilon(1e-9));
    CHECK(std::abs(standing_wave(std::vector{kPi, kPi})) <= 1e-6);
    // cos(pi/2)^2 is ~1e-33 in floating point, so the braces term vanishes.
    CHECK(standing_wave(std::vector{kPi / 2, kPi / 2}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("standing wave at pi is near zero in every dimension") {
    for (std::size_t d = 1; d <= 10; ++d) {
        CHECK(standing_wave(std::vector<double>(d, kPi)) <= 1e-6);
    }
}

TEST_CASE("standing wave values stay in [-1, 2] and are finite") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int k = 0; k < 20000; ++k) {
        std::vector<double> x(1 + k % 5);
        for (double& xi : x) xi = u(rng);
        const double f = standing_wave(x);
        REQUIRE(std::isfinite(f));
        CHECK(f >= -1.0);
        CHECK(f <= 2.0);
    }
}

TEST_CASE("standing wave beta is a parameter") {
    const std::vector x{3.0, -4.0};
    CHECK(standing_wave(x, 15.0) != standing_wave(x, 2.0));
    CHECK_THROWS_AS(standing_wave_problem(2, 0.0), ConfigError);
}

TEST_CASE("spring problem") {
    const auto p = spring_problem();
    CHECK(p.dimension == 3);
    REQUIRE(p.known_optimum);
    const auto& x = p.known_optimum->x;
    CHECK(p.objective(x) == doctest::Approx(0.012665).epsilon(1e-5 / 0.012665));
    CHECK(p.known_optimum->value == 0.012665);

    const auto g = constraint_values(p, x);
    REQUIRE(g.size() == 4);
    for (double gk : g) CHECK(gk <= 1e-4);
    // g1 and g2 by hand at the published point.
    const double w = x[0], d = x[1], L = x[2];
    CHECK(g[0] == doctest::Approx(1.0 - d * d * d * L / (71785.0 * w * w * w * w)));
    CHECK(g[2] == doctest::Approx(2.0 * (w + d) / 3.0 - 1.0));

    const auto e = evaluate(p, x);
    CHECK(e.objective == doctest::Approx(0.012665).epsilon(1e-3));
    CHECK(e.total_violation <= kPublishedOptimumTolerance);

    CHECK(p.objective(std::vector{0.3, 0.7, -2.0}) == 0.0);
    CHECK_FALSE(within_bounds(std::vector{0.3, 0.7, -2.0}, p.bounds));
}

TEST_CASE("welded beam problem") {
    const auto p = welded_beam_problem();
    CHECK(p.dimension == 4);
    REQUIRE(p.known_optimum);
    const auto& x = p.known_optimum->x;
    CHECK(p.objective(x) == doctest::Approx(1.724852308598).epsilon(1e-6));

    const auto g = constraint_values(p, x);
    REQUIRE(g.size() == 7);
    for (double gk : g) CHECK(gk <= 1e-3);
    CHECK(constraint_values(p, std::vector{0.5, 3.0, 8.0, 0.5})[0] == 0.0);

    const auto corner = evaluate(p, std::vector{0.1, 0.1, 0.1, 0.1});
    CHECK_FALSE(corner.feasible);
    CHECK(corner.total_violation > 0.0);
    // Deflection, shear, bending and buckling at the lower corner, evaluated independently.
    const auto gc = constraint_values(p, std::vector{0.1, 0.1, 0.1, 0.1});
    CHECK(gc[1] == doctest::Approx(21951.75).epsilon(1e-12));
    CHECK(gc[2] == doctest::Approx(30937694.5308608162).epsilon(1e-12));
    CHECK(gc[3] == doctest::Approx(503970000.0).epsilon(1e-12));
    CHECK(gc[6] == doctest::Approx(5989.79165957600732).epsilon(1e-12));
}

TEST_CASE("known optima lie in bounds and are feasible at the published tolerance") {
    for (const auto& p : {spring_problem(), welded_beam_problem(), standing_wave_problem(3)}) {
        REQUIRE(p.known_optimum);
        CHECK(within_bounds(p.known_optimum->x, p.bounds));
        for (double g : constraint_values(p, p.known_optimum->x)) CHECK(g <= kPublishedOptimumTolerance);
        for (const auto& [lo, hi] : p.bounds) CHECK(lo < hi);
    }
}

TEST_CASE("objectives are finite inside bounds") {
    std::mt19937_64 rng(11);
    for (const auto& p : {spring_problem(), welded_beam_problem()}) {
        for (int k = 0; k < 20000; ++k) {
            std::vector<double> x(p.dimension);
            for (std::size_t i = 0; i < x.size(); ++i) {
                x[i] = std::uniform_real_distribution<double>(p.bounds[i].lo, p.bounds[i].hi)(rng);
            }
            const auto e = evaluate(p, x);
            REQUIRE(std::isfinite(e.objective));
            CHECK(e.total_violation >= 0.0);
            CHECK(e.feasible == (e.total_violation <= kFeasibilityTolerance));
        }
    }
}

TEST_CASE("evaluate contracts") {
    const auto wave = standing_wave_problem(2);
    const auto e = evaluate(wave, std::vector{1.0, 4.0});
    CHECK(e.violations.empty());
    CHECK(e.feasible);
    CHECK_THROWS_AS(evaluate(wave, std::vector{1.0}), ContractError);

    EvaluationCounter counter;
    evaluate(wave, std::vector{1.0, 4.0}, counter);
    evaluate(wave, std::vector{2.0, 4.0}, counter);
    CHECK(counter.count == 2);
}

TEST_CASE("problem lookup by name") {
    CHECK(make_problem("standing-wave").dimension == 2);
    CHECK(make_problem("standing-wave:8").dimension == 8);
    CHECK(make_problem("spring").name == "spring");
    CHECK(make_problem("welded-beam").dimension == 4);
    CHECK_THROWS_AS(make_problem("rosenbrock"), ConfigError);
    CHECK_THROWS_AS(make_problem("standing-wave:x"), ConfigError);
    CHECK_THROWS_AS(make_problem("standing-wave:0"), ConfigError);
}

TEST_CASE("Deb comparison rules") {
    CHECK(better(feasible_eval(5.0), infeasible_eval(1.0)));
    CHECK(better(feasible_eval(1.0), feasible_eval(2.0)));
    CHECK(better(infeasible_eval(0.1), infeasible_eval(0.3)));
    CHECK(compare(feasible_eval(1.0), feasible_eval(1.0)) == std::weak_ordering::equivalent);
}

TEST_CASE("compare is a total preorder on an exhaustive small set") {
    std::vector<Evaluation> all;
    for (double f : {-1.0, 0.0, 2.0}) all.push_back(feasible_eval(f));
    for (double v : {0.1, 0.5, 2.0}) all.push_back(infeasible_eval(v));
    all.push_back(infeasible_eval(0.5));
    for (const auto& a : all) {
        CHECK(compare(a, a) == std::weak_ordering::equivalent);
        for (const auto& b : all) {
            const bool ab = compare(a, b) <= 0;
            const bool ba = compare(b, a) <= 0;
            CHECK((ab || ba));
            for (const auto& c : all) {
                if (ab && compare(b, c) <= 0) CHECK(compare(a, c) <= 0);
            }
        }
    }
}

TEST_CASE("clamp to bounds") {
    const Bounds box(2, Interval{-20.0, 20.0});
    CHECK(clamp_to_bounds(std::vector{1.0, -3.0}, box) == std::vector{1.0, -3.0});
    CHECK(clamp_to_bounds(std::vector{21.0, 0.0}, box) == std::vector{20.0, 0.0});
    CHECK(clamp_to_bounds(std::vector{-30.0, 30.0}, box) == std::vector{-20.0, 20.0});

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int k = 0; k < 1000; ++k) {
        const std::vector x{u(rng), u(rng)};
        const auto once = clamp_to_bounds(x, box);
        CHECK(clamp_to_bounds(once, box) == once);
        CHECK(within_bounds(once, box));
    }
}
