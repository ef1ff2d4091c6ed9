#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "batis/config.hpp"
#include "batis/errors.hpp"

namespace {

constexpr int kConfigErrorExit = 2;
constexpr int kCheckFailedExit = 3;

}  // namespace

int main(int argc, char** argv) {
    using namespace batis::bench;

    CLI::App app{"batis: bat algorithm and intermittent search benchmarks"};
    std::string experiment;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> runs;
    std::optional<std::string> out_path;
    std::optional<std::string> format;
    std::optional<std::string> problem;
    std::optional<std::string> dims;
    std::optional<std::string> q_grid;
    bool check = false;

    app.add_option("experiment", experiment,
                   "q-sweep | dim-scaling | design-benchmarks | intermittent-table | intermittent-sim")
        ->required();
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--seed", seed, "base seed");
    app.add_option("--runs", runs, "runs per cell");
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--format", format, "csv | json");
    app.add_option("--problem", problem, "problem name");
    app.add_option("--dims", dims, "dimension range LO..HI");
    app.add_option("--q-grid", q_grid, "comma-separated Q values");
    app.add_flag("--check", check, "exit 3 if any acceptance check fails");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigErrorExit;
    }

    ExperimentConfig config;
    Report report;
    try {
        if (!config_path.empty()) apply_config_file(config_path, config);
        config.experiment = parse_experiment(experiment);
        if (seed) config.seed = *seed;
        if (runs) config.runs = *runs;
        if (out_path) config.output_path = *out_path;
        if (format) config.format = parse_format(*format);
        if (problem) {
            config.problem = *problem;
            config.design_problems = {*problem};
        }
        if (dims) std::tie(config.dim_lo, config.dim_hi) = parse_dims(*dims);
        if (q_grid) config.q_grid = parse_q_grid(*q_grid);
        report = run_experiment(config);
    } catch (const batis::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfigErrorExit;
    }

    if (config.output_path.empty()) {
        write_report(report, config.experiment, config.format, std::cout);
    } else {
        std::ofstream out(config.output_path);
        if (!out) {
            std::cerr << "configuration error: cannot write " << config.output_path << '\n';
            return kConfigErrorExit;
        }
        write_report(report, config.experiment, config.format, out);
    }

    if (check) {
        for (const auto& c : report.checks) {
            std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
        }
        if (!report.all_passed()) return kCheckFailedExit;
    }
    return 0;
}
