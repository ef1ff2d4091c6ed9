#include "batis/bench.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "batis/errors.hpp"

namespace batis::bench {

namespace {

constexpr double kPi = std::numbers::pi;

// Standing-wave search geometry: domain half-width 20, basin radius pi/2, unit speed.
const intermittent::Params kWaveGeometry{kPi / 2.0, 20.0, 1.0, kPi * kPi / 8.0, 2};

bool is_standing_wave(const std::string& name) { return name.rfind("standing-wave", 0) == 0; }

std::string q_label(double q) { return format_double(q); }

double optimum_value(const Problem& p) { return p.known_optimum ? p.known_optimum->value : 0.0; }

Check make_check(std::string name, bool passed, std::string detail) {
    return {std::move(name), passed, std::move(detail)};
}

std::string join(std::span<const double> values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ';';
        out += format_double(values[i]);
    }
    return out;
}

}  // namespace

Experiment parse_experiment(const std::string& name) {
    if (name == "q-sweep") return Experiment::QSweep;
    if (name == "dim-scaling") return Experiment::DimScaling;
    if (name == "design-benchmarks") return Experiment::DesignBenchmarks;
    if (name == "intermittent-table") return Experiment::IntermittentTable;
    if (name == "intermittent-sim") return Experiment::IntermittentSim;
    throw ConfigError("unknown experiment: " + name);
}

std::string to_string(Experiment e) {
    switch (e) {
        case Experiment::QSweep: return "q-sweep";
        case Experiment::DimScaling: return "dim-scaling";
        case Experiment::DesignBenchmarks: return "design-benchmarks";
        case Experiment::IntermittentTable: return "intermittent-table";
        case Experiment::IntermittentSim: return "intermittent-sim";
    }
    return "unknown";
}

void BatOverrides::apply(BatConfig& config) const {
    if (n) config.n = *n;
    if (f_min) config.f_min = *f_min;
    if (f_max) config.f_max = *f_max;
    if (alpha) config.alpha = *alpha;
    if (gamma) config.gamma = *gamma;
    if (A0) config.A0 = *A0;
    if (r0) config.r0 = *r0;
    if (q_mode) config.q_mode = *q_mode;
    if (max_iterations) config.max_iterations = *max_iterations;
    if (target_accuracy) config.target_accuracy = *target_accuracy;
}

void ExperimentConfig::validate() const {
    if (runs < 1) throw ConfigError("runs must be >= 1");
    if (q_grid.empty()) throw ConfigError("q grid must not be empty");
    for (double q : q_grid) {
        if (!(q >= 0.0) || !std::isfinite(q)) throw ConfigError("Q values must be finite and >= 0");
    }
    if (dim_lo < 1 || dim_hi < dim_lo) throw ConfigError("dimension range must satisfy 1 <= lo <= hi");
    if (!(accuracy >= 0.0)) throw ConfigError("accuracy must be >= 0");
    if (censor_cap < 1) throw ConfigError("censor cap must be >= 1");
    if (sim.points < 2) throw ConfigError("simulation grid needs at least 2 points");
    if (!(sim.decades > 0.0)) throw ConfigError("simulation grid span must be positive");
    if (sim.trials < 1) throw ConfigError("simulation trials must be >= 1");
    BatConfig probe;
    bat.apply(probe);
    probe.validate();
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

CellStats summarize(std::string key, std::span<const double> values, const std::vector<bool>& success,
                    std::span<const long> iterations) {
    CellStats s;
    s.key = std::move(key);
    if (values.empty()) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        s.best = s.mean = s.median = s.std = s.mean_iterations = nan;
        return s;
    }
    // Sorting first makes every sum independent of run order.
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    s.best = sorted.front();
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
    const std::size_t mid = sorted.size() / 2;
    s.median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    double ss = 0.0;
    for (double v : sorted) ss += (v - s.mean) * (v - s.mean);
    s.std = sorted.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    s.success_rate = static_cast<double>(std::count(success.begin(), success.end(), true)) /
                     static_cast<double>(success.size());
    std::vector<long> its(iterations.begin(), iterations.end());
    std::sort(its.begin(), its.end());
    s.mean_iterations =
        static_cast<double>(std::accumulate(its.begin(), its.end(), 0LL)) / static_cast<double>(its.size());
    return s;
}

bool Report::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

BatConfig q_sweep_defaults() {
    BatConfig c;
    c.n = 15;
    c.max_iterations = 1000;
    return c;
}

BatConfig dim_scaling_defaults(long cap, double q) {
    BatConfig c;
    c.n = 15;
    c.max_iterations = cap;
    c.q_mode = QMode::fixed(q);
    c.target_accuracy = 1e-5;
    return c;
}

BatConfig design_defaults() {
    BatConfig c;
    c.n = 25;
    c.max_iterations = 2000;
    // Loudness follows the iteration clock; 0.99^2000 ~ 2e-9 spreads the cooling over the budget.
    c.alpha = 0.99;
    return c;
}

std::vector<RunResult> run_cell(const Problem& problem, const BatConfig& config, int runs, std::uint64_t seed) {
    std::vector<RunResult> out;
    out.reserve(static_cast<std::size_t>(runs));
    for (int k = 0; k < runs; ++k) {
        auto r = run(problem, config, derive_seed(seed, static_cast<std::uint64_t>(k)));
        // The trace is only needed for property checks; drop it to bound memory on long runs.
        r.trace.clear();
        r.trace.shrink_to_fit();
        out.push_back(std::move(r));
    }
    return out;
}

Report q_sweep(const ExperimentConfig& config) {
    config.validate();
    if (!is_standing_wave(config.problem)) {
        throw ConfigError("q-sweep needs a standing-wave problem, got " + config.problem);
    }
    const Problem problem = make_problem(config.problem);
    const double optimum = optimum_value(problem);

    Report report;
    report.table.header = {"Q",   "best",        "mean",       "median",          "std",
                           "success_rate", "mean_iterations", "mean_realized_Q"};
    std::vector<std::pair<double, double>> best_by_q;
    for (double q : config.q_grid) {
        BatConfig bat = q_sweep_defaults();
        config.bat.apply(bat);
        bat.q_mode = QMode::fixed(q);
        const auto results = run_cell(problem, bat, config.runs, config.seed);

        std::vector<double> gaps;
        std::vector<bool> success_flags;
        std::vector<long> iterations;
        std::vector<double> realized;
        for (const auto& r : results) {
            gaps.push_back(r.best_f - optimum);
            success_flags.push_back(std::abs(r.best_f - optimum) <= config.accuracy);
            iterations.push_back(r.iterations_used);
            realized.push_back(r.realized_Q);
        }
        const auto stats = summarize(q_label(q), gaps, success_flags, iterations);
        std::sort(realized.begin(), realized.end());
        const double mean_q = std::accumulate(realized.begin(), realized.end(), 0.0) / static_cast<double>(realized.size());
        report.table.add_row({q, stats.best, stats.mean, stats.median, stats.std, stats.success_rate,
                              stats.mean_iterations, mean_q});
        best_by_q.emplace_back(q, stats.best);
    }

    auto target = std::find_if(best_by_q.begin(), best_by_q.end(), [](const auto& e) { return e.first == 0.2; });
    if (target != best_by_q.end()) {
        bool smallest = true;
        for (const auto& [q, best] : best_by_q) {
            if (q != 0.2 && best < target->second) smallest = false;
        }
        report.checks.push_back(make_check("q0.2-smallest-best", smallest,
                                           "best gap at Q=0.2 is " + format_double(target->second)));
        report.checks.push_back(make_check("q0.2-best-below-1e-8", target->second <= 1e-8,
                                           "best gap at Q=0.2 is " + format_double(target->second)));
    }
    return report;
}

Report dim_scaling(const ExperimentConfig& config) {
    config.validate();
    if (!is_standing_wave(config.problem)) {
        throw ConfigError("dim-scaling needs a standing-wave problem, got " + config.problem);
    }
    Report report;
    report.table.header = {"d", "theory", "theory_is_estimate", "actual", "censored_fraction", "ratio"};
    std::vector<std::pair<int, double>> ratios;
    for (int d = config.dim_lo; d <= config.dim_hi; ++d) {
        auto geometry = kWaveGeometry;
        geometry.d = d;
        const auto theory = intermittent::mean_search_time(geometry);

        const Problem problem = standing_wave_problem(static_cast<std::size_t>(d));
        BatConfig bat = dim_scaling_defaults(config.censor_cap, config.dim_q);
        config.bat.apply(bat);
        if (!bat.target_accuracy) bat.target_accuracy = config.accuracy;
        const auto results = run_cell(problem, bat, config.runs, config.seed);

        std::vector<double> its;
        long censored = 0;
        for (const auto& r : results) {
            its.push_back(static_cast<double>(r.iterations_used));
            if (!r.reached_target) ++censored;
        }
        std::sort(its.begin(), its.end());
        const double actual = std::accumulate(its.begin(), its.end(), 0.0) / static_cast<double>(its.size());
        const double ratio = theory.value / actual;
        report.table.add_row({static_cast<std::int64_t>(d), theory.value, theory.estimate, actual,
                              static_cast<double>(censored) / static_cast<double>(results.size()), ratio});
        ratios.emplace_back(d, ratio);
    }

    bool increasing = true;
    bool any_pair = false;
    for (std::size_t i = 1; i < ratios.size(); ++i) {
        if (ratios[i - 1].first >= 4) {
            any_pair = true;
            if (!(ratios[i].second > ratios[i - 1].second)) increasing = false;
        }
    }
    if (any_pair) {
        report.checks.push_back(make_check("ratio-increasing-d>=4", increasing,
                                           "theory/actual strictly increasing from d=4"));
    }
    auto at8 = std::find_if(ratios.begin(), ratios.end(), [](const auto& e) { return e.first == 8; });
    if (at8 != ratios.end()) {
        report.checks.push_back(
            make_check("ratio-d8-above-10", at8->second > 10.0, "theory/actual at d=8 is " + format_double(at8->second)));
    }
    return report;
}

Report design_benchmarks(const ExperimentConfig& config) {
    config.validate();
    Report report;
    report.table.header = {"problem",  "runs",          "feasible_runs", "best_f",     "mean_f",
                           "median_f", "std_f",         "published_f",       "gap",        "x_distance",
                           "max_g",    "feasible_1e-6", "mean_realized_Q", "x",         "g"};
    for (const auto& name : config.design_problems) {
        if (name != "spring" && name != "welded-beam") {
            throw ConfigError("design-benchmarks supports spring and welded-beam, got " + name);
        }
        const Problem problem = make_problem(name);
        BatConfig bat = design_defaults();
        config.bat.apply(bat);
        const auto results = run_cell(problem, bat, config.runs, config.seed);

        const RunResult* best = &results.front();
        std::vector<double> feasible_f;
        std::vector<double> realized;
        for (const auto& r : results) {
            if (better(r.best_eval, best->best_eval)) best = &r;
            if (r.best_eval.feasible) feasible_f.push_back(r.best_f);
            realized.push_back(r.realized_Q);
        }
        const std::vector<bool> all_feasible(feasible_f.size(), true);
        const std::vector<long> its(feasible_f.size(), bat.max_iterations);
        const auto stats = summarize(name, feasible_f, all_feasible, its);
        std::sort(realized.begin(), realized.end());
        const double mean_q = std::accumulate(realized.begin(), realized.end(), 0.0) / static_cast<double>(realized.size());

        const auto g = constraint_values(problem, best->best_x);
        const double max_g = *std::max_element(g.begin(), g.end());
        const bool feasible = max_g <= 1e-6;
        const auto& published = *problem.known_optimum;
        double dist2 = 0.0;
        for (std::size_t i = 0; i < published.x.size(); ++i) {
            dist2 += (best->best_x[i] - published.x[i]) * (best->best_x[i] - published.x[i]);
        }
        report.table.add_row({name, static_cast<std::int64_t>(results.size()),
                              static_cast<std::int64_t>(feasible_f.size()), best->best_f, stats.mean, stats.median,
                              stats.std, published.value, best->best_f - published.value, std::sqrt(dist2), max_g, feasible,
                              mean_q, join(best->best_x), join(g)});

        const double limit = name == "spring" ? 0.012765 : 1.72585;
        report.checks.push_back(make_check(name + "-published-optimum", feasible && best->best_f <= limit,
                                           "best feasible f = " + format_double(best->best_f) + ", limit " +
                                               format_double(limit)));
    }
    return report;
}

std::vector<intermittent::Params> default_intermittent_grid() {
    std::vector<intermittent::Params> grid{
        {1.0, 10.0, 1.0, 0.5, 2},
        {1.0, 12.7, 1.0, 0.5, 2},
        {1.0, 1e12, 1.0, 0.5, 2},
        {1.0, 1.0, 1.0, 0.5, 2},
    };
    for (int d = 1; d <= 8; ++d) {
        auto p = kWaveGeometry;
        p.d = d;
        grid.push_back(p);
    }
    return grid;
}

Report intermittent_table(const ExperimentConfig& config) {
    config.validate();
    const auto grid = config.grid.empty() ? default_intermittent_grid() : config.grid;
    Report report;
    report.table.header = {"a",         "b",         "u",               "D",
                           "d",         "optimal_ratio", "tau_a_min",   "tau_b_min",
                           "min_times_ratio", "mean_search_time", "mean_time_is_estimate", "status"};
    for (const auto& p : grid) {
        std::vector<Cell> row{p.a, p.b, p.u, p.D, static_cast<std::int64_t>(p.d)};
        std::string status;
        auto note = [&status](const std::string& what) {
            if (!status.empty()) status += "; ";
            status += what;
        };
        try {
            row.emplace_back(intermittent::optimal_ratio(p));
        } catch (const DomainError& e) {
            row.emplace_back(std::monostate{});
            note(std::string("domain-error: ") + e.what());
        }
        try {
            const auto t = intermittent::min_phase_times(p);
            row.emplace_back(t.tau_a);
            row.emplace_back(t.tau_b);
            row.emplace_back(t.tau_a / (t.tau_b * t.tau_b));
        } catch (const DomainError& e) {
            row.insert(row.end(), 3, std::monostate{});
            note(std::string("domain-error: ") + e.what());
        }
        try {
            const auto m = intermittent::mean_search_time(p);
            row.emplace_back(m.value);
            row.emplace_back(m.estimate);
        } catch (const DomainError& e) {
            row.insert(row.end(), 2, std::monostate{});
            note(std::string("domain-error: ") + e.what());
        }
        row.emplace_back(status.empty() ? std::string("ok") : status);
        report.table.add_row(std::move(row));
    }

    struct Expected {
        double b;
        double value;
        double tol;
        const char* name;
    };
    for (const auto& [b, value, tol, name] : {Expected{10.0, 0.204, 0.005, "ratio-b10"},
                                              Expected{12.7, 0.19, 0.005, "ratio-b12.7"},
                                              Expected{1e12, 0.125, 0.001, "ratio-limit"}}) {
        for (const auto& p : grid) {
            if (p.a == 1.0 && p.b == b && p.D == 0.5) {
                const double r = intermittent::optimal_ratio(p);
                report.checks.push_back(make_check(name, std::abs(r - value) <= tol, "ratio " + format_double(r)));
                break;
            }
        }
    }
    return report;
}

Report intermittent_sim(const ExperimentConfig& config) {
    config.validate();
    const auto& sweep = config.sim;
    const auto& p = sweep.params;
    if (p.d != 2) throw ConfigError("intermittent-sim supports d = 2 only");
    double tau_b = 0.0;
    double predicted = 0.0;
    try {
        tau_b = sweep.tau_b ? *sweep.tau_b : intermittent::min_phase_times(p).tau_b;
        predicted = intermittent::optimal_ratio(p);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("intermittent-sim parameters: ") + e.what());
    }
    const double centre = predicted * tau_b * tau_b;

    Report report;
    report.table.header = {"kind", "tau_a", "tau_b", "ratio", "mean_time", "std_error", "predicted_ratio",
                           "ratio_quotient"};
    double best_mean = std::numeric_limits<double>::infinity();
    double best_tau = 0.0;
    double best_se = 0.0;
    for (int i = 0; i < sweep.points; ++i) {
        const double offset = sweep.decades * (static_cast<double>(i) / (sweep.points - 1) - 0.5);
        const double tau_a = centre * std::pow(10.0, offset);
        std::vector<Cell> row{std::string("point"), tau_a, tau_b, tau_a / (tau_b * tau_b)};
        try {
            // Same seed at every grid point: common random numbers sharpen the argmin.
            const auto r = intermittent::simulate(p, tau_a, tau_b, sweep.trials, config.seed);
            row.emplace_back(r.mean_time);
            row.emplace_back(r.std_error);
            if (r.mean_time < best_mean) {
                best_mean = r.mean_time;
                best_tau = tau_a;
                best_se = r.std_error;
            }
        } catch (const DomainError&) {
            row.insert(row.end(), 2, std::monostate{});
        }
        row.insert(row.end(), 2, std::monostate{});
        report.table.add_row(std::move(row));
    }
    if (std::isfinite(best_mean)) {
        const double empirical = best_tau / (tau_b * tau_b);
        const double quotient = empirical / predicted;
        report.table.add_row({std::string("summary"), best_tau, tau_b, empirical, best_mean, best_se, predicted,
                              quotient});
        report.checks.push_back(make_check("argmin-within-factor-2", quotient >= 0.5 && quotient <= 2.0,
                                           "empirical/predicted = " + format_double(quotient)));
    } else {
        report.table.add_row({std::string("summary"), std::monostate{}, tau_b, std::monostate{}, std::monostate{},
                              std::monostate{}, predicted, std::monostate{}});
        report.checks.push_back(make_check("argmin-within-factor-2", false, "no grid point could be simulated"));
    }
    return report;
}

Report run_experiment(const ExperimentConfig& config) {
    switch (config.experiment) {
        case Experiment::QSweep: return q_sweep(config);
        case Experiment::DimScaling: return dim_scaling(config);
        case Experiment::DesignBenchmarks: return design_benchmarks(config);
        case Experiment::IntermittentTable: return intermittent_table(config);
        case Experiment::IntermittentSim: return intermittent_sim(config);
    }
    throw ConfigError("unknown experiment");
}

}  // namespace batis::bench
