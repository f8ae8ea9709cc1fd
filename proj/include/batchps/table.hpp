#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bps {

inline constexpr const char* kVersion = "0.1.0";

// A flat result table with a parameter header; written as CSV or JSON.
struct Table {
    using Cell = std::variant<double, long, std::string>;
    std::vector<std::pair<std::string, std::string>> header;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void meta(const std::string& k, double v);
    void meta(const std::string& k, const std::string& v);
};

// CSV: one '#' line per header entry, then the column line and rows.
// Numbers use the shortest round-trip form.
void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);

}  // namespace bps
