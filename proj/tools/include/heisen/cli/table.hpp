// table.hpp — Long-format result tables and their CSV / JSON serialisation

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace heisen::cli {

using Cell = std::variant<std::string, double, std::int64_t, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::json meta = nlohmann::json::object();

    void add(std::vector<Cell> row);
};

// Doubles at 17 significant digits; strings quoted only when needed.
std::string to_csv(const Table& t);
std::string to_json(const Table& t);

// Writes via a sibling temporary file and rename.
void write_atomic(const std::string& path, const std::string& content);

} // namespace heisen::cli
