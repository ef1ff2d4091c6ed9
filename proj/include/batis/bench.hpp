#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "batis/bat.hpp"
#include "batis/intermittent.hpp"
#include "batis/table.hpp"

namespace batis::bench {

enum class Experiment { QSweep, DimScaling, DesignBenchmarks, IntermittentTable, IntermittentSim };
enum class Format { Csv, Json };

Experiment parse_experiment(const std::string& name);  // throws ConfigError
std::string to_string(Experiment e);

/// Optional per-field overrides layered over an experiment's default BatConfig.
struct BatOverrides {
    std::optional<int> n;
    std::optional<double> f_min, f_max, alpha, gamma, A0, r0;
    std::optional<QMode> q_mode;
    std::optional<long> max_iterations;
    std::optional<double> target_accuracy;

    void apply(BatConfig& config) const;
};

struct SimSweep {
    intermittent::Params params{1.0, 10.0, 1.0, 0.5, 2};
    std::optional<double> tau_b;  // defaults to the minimum fast-phase time
    int points = 15;
    double decades = 2.0;  // grid span, centred on the predicted optimum
    long trials = 2000;
};

struct ExperimentConfig {
    Experiment experiment = Experiment::QSweep;
    std::string problem = "standing-wave:2";
    int runs = 25;
    std::uint64_t seed = 1;
    BatOverrides bat;
    std::string output_path;  // empty: stdout
    Format format = Format::Csv;

    std::vector<double> q_grid{0.3, 0.2, 0.1, 0.05};
    int dim_lo = 2;
    int dim_hi = 8;
    double accuracy = 1e-5;  // success threshold on |best_f - optimum|
    long censor_cap = 200000;
    double dim_q = 0.2;
    std::vector<std::string> design_problems{"spring", "welded-beam"};
    std::vector<intermittent::Params> grid;  // intermittent-table rows; empty: built-in grid
    SimSweep sim;

    void validate() const;  // throws ConfigError
};

/// Deterministic per-run seed from (base seed, run index).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

struct CellStats {
    std::string key;
    double best = 0.0;
    double mean = 0.0;
    double median = 0.0;
    double std = 0.0;
    double success_rate = 0.0;
    double mean_iterations = 0.0;
};

/// Statistics of final values; independent of the order of `values`.
/// `success` and `iterations` are parallel to `values`.
CellStats summarize(std::string key, std::span<const double> values, const std::vector<bool>& success,
                    std::span<const long> iterations);

struct Check {
    std::string name;
    bool passed;
    std::string detail;
};

struct Report {
    Table table;
    std::vector<Check> checks;  // evaluated by --check

    bool all_passed() const;
};

BatConfig q_sweep_defaults();
BatConfig dim_scaling_defaults(long cap, double q);
BatConfig design_defaults();

/// Runs `runs` seeds of one configuration. Run k uses derive_seed(seed, k).
std::vector<RunResult> run_cell(const Problem& problem, const BatConfig& config, int runs, std::uint64_t seed);

Report q_sweep(const ExperimentConfig& config);
Report dim_scaling(const ExperimentConfig& config);
Report design_benchmarks(const ExperimentConfig& config);
Report intermittent_table(const ExperimentConfig& config);
Report intermittent_sim(const ExperimentConfig& config);

Report run_experiment(const ExperimentConfig& config);

/// Rows of the built-in intermittent-table grid.
std::vector<intermittent::Params> default_intermittent_grid();

}  // namespace batis::bench
