#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace batis {

/// Blank cells carry no value; CSV writes them as empty fields, JSON as null.
using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    /// Throws ContractError when the row width differs from the header.
    void add_row(std::vector<Cell> row);
    std::size_t column(const std::string& name) const;
};

/// 12 significant digits, '.' decimal point, independent of the global locale.
std::string format_double(double value);

std::string format_cell(const Cell& cell);

void write_csv(const Table& table, std::ostream& out);
nlohmann::json to_json(const Table& table);

}  // namespace batis
