#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "batis/bench.hpp"

namespace batis::bench {

/// Layers a JSON document over `config`. Unknown keys and wrong types throw ConfigError.
void apply_json(const nlohmann::json& doc, ExperimentConfig& config);

/// Reads and applies a JSON config file; unreadable or malformed files throw ConfigError.
void apply_config_file(const std::string& path, ExperimentConfig& config);

/// "LO..HI" -> {LO, HI}.
std::pair<int, int> parse_dims(std::string_view text);
/// "a,b,c" -> {a, b, c}.
std::vector<double> parse_q_grid(std::string_view text);
Format parse_format(std::string_view text);

/// CSV writes the table only; JSON also carries the checks.
void write_report(const Report& report, Experiment experiment, Format format, std::ostream& out);

}  // namespace batis::bench
