#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wold/version.hpp"

namespace wold {

// Fixed float formatting: shortest form within 12 significant digits.
// Keeps CSV output byte-identical across runs and platforms.
inline std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

// CSV with a leading metadata comment block. Deliberately no timestamps here:
// identical configs must produce byte-identical files.
inline void write_csv(std::ostream& os, const std::string& command_echo,
                      const Table& t) {
    os << "# " << kToolName << " " << kVersion << "\n";
    os << "# command: " << command_echo << "\n";
    os << "# rows: " << t.rows.size() << "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        os << (c ? "," : "") << t.columns[c];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << row[c];
        os << "\n";
    }
}

// JSON mirror with identical field names; wall time lives here, not in CSV.
inline void write_json(std::ostream& os, const std::string& command_echo,
                       const Table& t, double wall_ms) {
    nlohmann::ordered_json meta;
    meta["tool"] = kToolName;
    meta["version"] = kVersion;
    meta["command"] = command_echo;
    meta["rows"] = t.rows.size();
    meta["wall_ms"] = wall_ms;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t c = 0; c < row.size() && c < t.columns.size(); ++c)
            obj[t.columns[c]] = row[c];
        rows.push_back(std::move(obj));
    }
    nlohmann::ordered_json doc;
    doc["meta"] = std::move(meta);
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << "\n";
}

} // namespace wold
