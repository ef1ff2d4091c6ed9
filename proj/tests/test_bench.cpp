#include <doctest.h>

#include <algorithm>
#include <clocale>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "batis/config.hpp"
#include "batis/errors.hpp"

using namespace batis;
using namespace batis::bench;

namespace {

std::string csv(const Report& r) {
    std::ostringstream out;
    write_csv(r.table, out);
    return out.str();
}

double cell(const Table& t, std::size_t row, const std::string& col) {
    return std::get<double>(t.rows.at(row).at(t.column(col)));
}

}  // namespace

TEST_CASE("double formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0 / 3.0) == "0.333333333333");
    CHECK(format_double(1234567.891234567) == "1234567.89123");
    CHECK(format_double(2.5e-14) == "2.5e-14");
    CHECK(format_double(std::nan("")) == "nan");
    // The decimal point does not follow the global C locale.
    if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8")) {
        CHECK(format_double(0.5) == "0.5");
        std::setlocale(LC_NUMERIC, "C");
    }
}

TEST_CASE("table csv and json") {
    Table t;
    t.header = {"name", "value", "count", "flag", "blank"};
    t.add_row({std::string("a,b"), 1.5, std::int64_t{3}, true, std::monostate{}});
    CHECK_THROWS_AS(t.add_row({1.0}), ContractError);
    std::ostringstream out;
    write_csv(t, out);
    CHECK(out.str() == "name,value,count,flag,blank\n\"a,b\",1.5,3,true,\n");
    const auto j = to_json(t);
    CHECK(j["rows"][0]["value"] == 1.5);
    CHECK(j["rows"][0]["blank"].is_null());
    CHECK(j["columns"].size() == 5);
    CHECK_THROWS_AS(t.column("missing"), ContractError);
}

TEST_CASE("summarize") {
    const std::vector<double> v{3.0, 1.0, 2.0, 4.0};
    const std::vector<bool> ok{true, false, true, false};
    const std::vector<long> its{10, 20, 30, 40};
    const auto s = summarize("k", v, ok, its);
    CHECK(s.best == 1.0);
    CHECK(s.mean == 2.5);
    CHECK(s.median == 2.5);
    CHECK(s.std == doctest::Approx(std::sqrt(5.0 / 3.0)));
    CHECK(s.success_rate == 0.5);
    CHECK(s.mean_iterations == 25.0);
    CHECK(s.best <= s.median);
}

TEST_CASE("summarize ignores run order") {
    std::mt19937_64 rng(1);
    std::vector<double> v(101);
    for (auto& x : v) x = std::uniform_real_distribution<double>(-1e3, 1e3)(rng) * std::pow(10.0, x);
    std::vector<bool> ok(v.size());
    std::vector<long> its(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        ok[i] = i % 3 == 0;
        its[i] = static_cast<long>(i * 7);
    }
    const auto base = summarize("k", v, ok, its);
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    for (int k = 0; k < 10; ++k) {
        std::shuffle(idx.begin(), idx.end(), rng);
        std::vector<double> sv;
        std::vector<bool> so;
        std::vector<long> si;
        for (auto i : idx) {
            sv.push_back(v[i]);
            so.push_back(ok[i]);
            si.push_back(its[i]);
        }
        const auto s = summarize("k", sv, so, si);
        CHECK(s.best == base.best);
        CHECK(s.mean == base.mean);
        CHECK(s.median == base.median);
        CHECK(s.std == base.std);
        CHECK(s.success_rate == base.success_rate);
        CHECK(s.mean_iterations == base.mean_iterations);
    }
}

TEST_CASE("derived seeds") {
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("a cell rerun in isolation reproduces its statistics") {
    ExperimentConfig c;
    c.runs = 3;
    c.bat.max_iterations = 50;
    c.q_grid = {0.3, 0.2};
    const auto both = q_sweep(c);
    c.q_grid = {0.2};
    const auto alone = q_sweep(c);
    REQUIRE(alone.table.rows.size() == 1);
    CHECK(alone.table.rows[0] == both.table.rows[1]);
}

TEST_CASE("q sweep degenerate budget") {
    ExperimentConfig c;
    c.runs = 1;
    c.bat.max_iterations = 0;
    const auto r = q_sweep(c);
    REQUIRE(r.table.rows.size() == 4);
    const double first = cell(r.table, 0, "best");
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(cell(r.table, i, "best") == first);
        CHECK(cell(r.table, i, "median") == first);
    }
    CHECK(r.checks.size() == 2);
}

TEST_CASE("q sweep rejects other problems") {
    ExperimentConfig c;
    c.problem = "spring";
    CHECK_THROWS_AS(q_sweep(c), ConfigError);
    c.problem = "nope";
    CHECK_THROWS_AS(q_sweep(c), ConfigError);
}

TEST_CASE("success rate does not grow as the accuracy tightens") {
    ExperimentConfig c;
    c.runs = 6;
    c.bat.max_iterations = 150;
    c.q_grid = {0.2, 0.05};
    c.accuracy = 1e-1;
    const auto loose = q_sweep(c);
    c.accuracy = 1e-4;
    const auto tight = q_sweep(c);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(cell(tight.table, i, "success_rate") <= cell(loose.table, i, "success_rate"));
    }
}

TEST_CASE("dim scaling shape") {
    ExperimentConfig c;
    c.experiment = Experiment::DimScaling;
    c.runs = 2;
    c.dim_lo = 2;
    c.dim_hi = 4;
    c.censor_cap = 300;
    const auto r = dim_scaling(c);
    REQUIRE(r.table.rows.size() == 3);
    CHECK(cell(r.table, 0, "theory") == doctest::Approx(812.346717102030).epsilon(1e-12));
    CHECK(std::get<bool>(r.table.rows[2][r.table.column("theory_is_estimate")]));
    for (std::size_t i = 0; i < 3; ++i) CHECK(cell(r.table, i, "actual") <= 300.0);
}

TEST_CASE("design benchmarks report") {
    ExperimentConfig c;
    c.runs = 2;
    c.bat.max_iterations = 100;
    const auto r = design_benchmarks(c);
    REQUIRE(r.table.rows.size() == 2);
    CHECK(r.checks.size() == 2);
    c.design_problems = {"standing-wave"};
    CHECK_THROWS_AS(design_benchmarks(c), ConfigError);
}

TEST_CASE("intermittent table") {
    ExperimentConfig c;
    const auto r = intermittent_table(c);
    REQUIRE(r.table.rows.size() == default_intermittent_grid().size());
    CHECK(cell(r.table, 0, "optimal_ratio") == doctest::Approx(0.204).epsilon(0.005 / 0.204));
    CHECK(cell(r.table, 1, "optimal_ratio") == doctest::Approx(0.19).epsilon(0.005 / 0.19));
    // Row with b = a surfaces as blank cells plus a labeled status.
    const auto& bad = r.table.rows[3];
    CHECK(std::holds_alternative<std::monostate>(bad[r.table.column("optimal_ratio")]));
    CHECK(std::get<std::string>(bad[r.table.column("status")]).find("domain-error") == 0);
    CHECK(std::get<std::string>(r.table.rows[0][r.table.column("status")]) == "ok");
}

TEST_CASE("intermittent sim shape and determinism") {
    ExperimentConfig c;
    c.sim.points = 4;
    c.sim.trials = 40;
    const auto a = intermittent_sim(c);
    const auto b = intermittent_sim(c);
    CHECK(a.table.rows.size() == 5);
    CHECK(std::get<std::string>(a.table.rows.back()[0]) == "summary");
    CHECK(csv(a) == csv(b));
    c.sim.params.d = 3;
    CHECK_THROWS_AS(intermittent_sim(c), ConfigError);
}

TEST_CASE("experiment names") {
    for (auto e : {Experiment::QSweep, Experiment::DimScaling, Experiment::DesignBenchmarks,
                   Experiment::IntermittentTable, Experiment::IntermittentSim}) {
        CHECK(parse_experiment(to_string(e)) == e);
    }
    CHECK_THROWS_AS(parse_experiment("sweep-all"), ConfigError);
}

TEST_CASE("config validation") {
    ExperimentConfig c;
    c.runs = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.runs = 1;
    c.dim_lo = 5;
    c.dim_hi = 4;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.dim_hi = 5;
    c.bat.alpha = 2.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("json config layering") {
    ExperimentConfig c;
    apply_json(nlohmann::json::parse(R"({
        "experiment": "dim-scaling", "runs": 7, "seed": 11,
        "bat": {"n": 20, "q": 0.3, "alpha": 0.95},
        "output": {"format": "json"},
        "dims": "3..5", "q_grid": [0.1],
        "sim": {"b": 20, "points": 9}
    })"), c);
    CHECK(c.experiment == Experiment::DimScaling);
    CHECK(c.runs == 7);
    CHECK(c.seed == 11);
    CHECK(*c.bat.n == 20);
    CHECK(c.bat.q_mode->is_fixed());
    CHECK(c.bat.q_mode->q == 0.3);
    CHECK(c.format == Format::Json);
    CHECK(c.dim_lo == 3);
    CHECK(c.dim_hi == 5);
    CHECK(c.q_grid == std::vector{0.1});
    CHECK(c.sim.params.b == 20.0);
    CHECK(c.sim.points == 9);
    CHECK(c.problem == "standing-wave:2");

    apply_json(nlohmann::json::parse(R"({"bat": {"q": "emergent"}, "dims": [2, 6]})"), c);
    CHECK_FALSE(c.bat.q_mode->is_fixed());
    CHECK(c.dim_hi == 6);

    CHECK_THROWS_AS(apply_json(nlohmann::json::parse(R"({"rnus": 3})"), c), ConfigError);
    CHECK_THROWS_AS(apply_json(nlohmann::json::parse(R"({"bat": {"beta": 3}})"), c), ConfigError);
    CHECK_THROWS_AS(apply_json(nlohmann::json::parse(R"({"runs": "many"})"), c), ConfigError);
    CHECK_THROWS_AS(apply_json(nlohmann::json::parse(R"([1, 2])"), c), ConfigError);
    CHECK_THROWS_AS(apply_config_file("/nonexistent/config.json", c), ConfigError);
}

TEST_CASE("flag parsers") {
    CHECK(parse_dims("2..8") == std::pair{2, 8});
    CHECK_THROWS_AS(parse_dims("2-8"), ConfigError);
    CHECK_THROWS_AS(parse_dims("a..8"), ConfigError);
    CHECK(parse_q_grid("0.3,0.2,0.1") == std::vector{0.3, 0.2, 0.1});
    CHECK(parse_q_grid("0.2") == std::vector{0.2});
    CHECK_THROWS_AS(parse_q_grid("0.2,,0.1"), ConfigError);
    CHECK(parse_format("json") == Format::Json);
    CHECK_THROWS_AS(parse_format("xml"), ConfigError);
}

TEST_CASE("json report carries checks") {
    ExperimentConfig c;
    const auto r = intermittent_table(c);
    std::ostringstream out;
    write_report(r, Experiment::IntermittentTable, Format::Json, out);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j["experiment"] == "intermittent-table");
    CHECK(j["checks"].size() == r.checks.size());
    CHECK(j["rows"].size() == r.table.rows.size());
}
