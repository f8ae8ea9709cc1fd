#include "batchps/table.hpp"

#include <ostream>

#include <json.hpp>

#include "batchps/csv.hpp"

namespace bps {

void Table::meta(const std::string& k, double v) { header.emplace_back(k, shortest(v)); }
void Table::meta(const std::string& k, const std::string& v) { header.emplace_back(k, v); }

void write_csv(std::ostream& os, const Table& t) {
    for (auto& [k, v] : t.header) os << "# " << k << '=' << v << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) os << ',';
            std::visit(
                [&](auto&& c) {
                    using T = std::decay_t<decltype(c)>;
                    if constexpr (std::is_same_v<T, double>) os << shortest(c);
                    else os << c;
                },
                r[i]);
        }
        os << '\n';
    }
}

void write_json(std::ostream& os, const Table& t) {
    nlohmann::ordered_json j;
    j["header"] = nlohmann::ordered_json::object();
    for (auto& [k, v] : t.header) j["header"][k] = v;
    j["columns"] = t.columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (auto& r : t.rows) {
        auto row = nlohmann::ordered_json::array();
        for (auto& c : r) {
            std::visit(
                [&](auto&& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        if (std::isfinite(v)) row.push_back(v);
                        else row.push_back(nullptr);  // JSON has no inf/nan
                    } else {
                        row.push_back(v);
                    }
                },
                c);
        }
        j["rows"].push_back(row);
    }
    os << j.dump(1) << '\n';
}

}  // namespace bps
