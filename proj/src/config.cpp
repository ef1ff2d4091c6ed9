#include "batis/config.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <set>

#include "batis/errors.hpp"

namespace batis::bench {

namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

template <typename T>
T get(const json& j, const std::string& key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("bad value for '" + key + "': " + e.what());
    }
}

template <typename T>
void read(const json& j, const std::string& key, T& target) {
    if (j.contains(key)) target = get<T>(j, key);
}

template <typename T>
void read(const json& j, const std::string& key, std::optional<T>& target) {
    if (j.contains(key)) target = get<T>(j, key);
}

QMode read_q_mode(const json& j) {
    const auto& q = j.at("q");
    if (q.is_string()) {
        if (q.get<std::string>() == "emergent") return QMode::emergent();
        throw ConfigError("bat.q must be a number or \"emergent\"");
    }
    if (!q.is_number()) throw ConfigError("bat.q must be a number or \"emergent\"");
    return QMode::fixed(q.get<double>());
}

void read_bat(const json& j, BatOverrides& bat) {
    require_object(j, "bat",
                   {"n", "f_min", "f_max", "alpha", "gamma", "A0", "r0", "q", "max_iterations", "target_accuracy"});
    read(j, "n", bat.n);
    read(j, "f_min", bat.f_min);
    read(j, "f_max", bat.f_max);
    read(j, "alpha", bat.alpha);
    read(j, "gamma", bat.gamma);
    read(j, "A0", bat.A0);
    read(j, "r0", bat.r0);
    if (j.contains("q")) bat.q_mode = read_q_mode(j);
    read(j, "max_iterations", bat.max_iterations);
    read(j, "target_accuracy", bat.target_accuracy);
}

void read_params(const json& j, intermittent::Params& p) {
    read(j, "a", p.a);
    read(j, "b", p.b);
    read(j, "u", p.u);
    read(j, "D", p.D);
    read(j, "d", p.d);
}

void read_dims(const json& j, ExperimentConfig& config) {
    const auto& dims = j.at("dims");
    if (dims.is_string()) {
        std::tie(config.dim_lo, config.dim_hi) = parse_dims(dims.get<std::string>());
    } else if (dims.is_array() && dims.size() == 2 && dims[0].is_number_integer() && dims[1].is_number_integer()) {
        config.dim_lo = dims[0].get<int>();
        config.dim_hi = dims[1].get<int>();
    } else {
        throw ConfigError("dims must be \"LO..HI\" or [LO, HI]");
    }
}

double parse_double(std::string_view text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) throw ConfigError("not a number: '" + std::string(text) + "'");
    return value;
}

int parse_int(std::string_view text) {
    int value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) throw ConfigError("not an integer: '" + std::string(text) + "'");
    return value;
}

}  // namespace

void apply_json(const json& doc, ExperimentConfig& config) {
    require_object(doc, "config",
                   {"experiment", "problem", "runs", "seed", "bat", "output", "q_grid", "dims", "accuracy",
                    "censor_cap", "dim_q", "design_problems", "grid", "sim"});
    if (doc.contains("experiment")) config.experiment = parse_experiment(get<std::string>(doc, "experiment"));
    read(doc, "problem", config.problem);
    read(doc, "runs", config.runs);
    read(doc, "seed", config.seed);
    if (doc.contains("bat")) read_bat(doc.at("bat"), config.bat);
    if (doc.contains("output")) {
        const auto& out = doc.at("output");
        require_object(out, "output", {"path", "format"});
        read(out, "path", config.output_path);
        if (out.contains("format")) config.format = parse_format(get<std::string>(out, "format"));
    }
    read(doc, "q_grid", config.q_grid);
    if (doc.contains("dims")) read_dims(doc, config);
    read(doc, "accuracy", config.accuracy);
    read(doc, "censor_cap", config.censor_cap);
    read(doc, "dim_q", config.dim_q);
    read(doc, "design_problems", config.design_problems);
    if (doc.contains("grid")) {
        const auto& grid = doc.at("grid");
        if (!grid.is_array()) throw ConfigError("grid must be an array");
        config.grid.clear();
        for (const auto& row : grid) {
            require_object(row, "grid row", {"a", "b", "u", "D", "d"});
            intermittent::Params p;
            read_params(row, p);
            config.grid.push_back(p);
        }
    }
    if (doc.contains("sim")) {
        const auto& sim = doc.at("sim");
        require_object(sim, "sim", {"a", "b", "u", "D", "d", "tau_b", "points", "decades", "trials"});
        read_params(sim, config.sim.params);
        read(sim, "tau_b", config.sim.tau_b);
        read(sim, "points", config.sim.points);
        read(sim, "decades", config.sim.decades);
        read(sim, "trials", config.sim.trials);
    }
}

void apply_config_file(const std::string& path, ExperimentConfig& config) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed config file " + path + ": " + e.what());
    }
    apply_json(doc, config);
}

std::pair<int, int> parse_dims(std::string_view text) {
    const auto sep = text.find("..");
    if (sep == std::string_view::npos) throw ConfigError("dims must look like LO..HI");
    return {parse_int(text.substr(0, sep)), parse_int(text.substr(sep + 2))};
}

std::vector<double> parse_q_grid(std::string_view text) {
    std::vector<double> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse_double(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

Format parse_format(std::string_view text) {
    if (text == "csv") return Format::Csv;
    if (text == "json") return Format::Json;
    throw ConfigError("format must be csv or json, got " + std::string(text));
}

void write_report(const Report& report, Experiment experiment, Format format, std::ostream& out) {
    if (format == Format::Csv) {
        write_csv(report.table, out);
        return;
    }
    auto doc = to_json(report.table);
    doc["experiment"] = to_string(experiment);
    auto checks = json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    doc["checks"] = std::move(checks);
    out << doc.dump(2) << '\n';
}

}  // namespace batis::bench
