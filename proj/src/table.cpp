#include "batis/table.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>

#include "batis/errors.hpp"

namespace batis {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != header.size()) {
        throw ContractError("table row has " + std::to_string(row.size()) + " cells, header has " +
                            std::to_string(header.size()));
    }
    rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw ContractError("no column named " + name);
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 12);
    return std::string(buf.data(), ptr);
}

namespace {

struct CellFormatter {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
};

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string format_cell(const Cell& cell) { return std::visit(CellFormatter{}, cell); }

void write_csv(const Table& table, std::ostream& out) {
    auto write_line = [&out](const auto& fields, auto&& render) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out << ',';
            out << csv_escape(render(fields[i]));
        }
        out << '\n';
    };
    write_line(table.header, [](const std::string& s) { return s; });
    for (const auto& row : table.rows) {
        write_line(row, [](const Cell& c) { return format_cell(c); });
    }
}

nlohmann::json to_json(const Table& table) {
    auto rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        auto obj = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& key = table.header[i];
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::monostate>) {
                        obj[key] = nullptr;
                    } else if constexpr (std::is_same_v<T, double>) {
                        if (std::isfinite(v)) {
                            obj[key] = v;
                        } else {
                            obj[key] = format_double(v);
                        }
                    } else {
                        obj[key] = v;
                    }
                },
                row[i]);
        }
        rows.push_back(std::move(obj));
    }
    return nlohmann::json{{"columns", table.header}, {"rows", std::move(rows)}};
}

}  // namespace batis
