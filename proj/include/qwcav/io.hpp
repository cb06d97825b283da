// io.hpp: tabular datasets with a metadata header, CSV/JSON emission and the
// flat key=value config format.
//
// CSV layout: "# key=value" lines, one header row, then data rows. Doubles are
// written with 17 significant digits so a file re-parses to the same bits.

#pragma once

#include <json.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qwcav::io {

using Cell = std::variant<double, std::string>;

struct Dataset {
    std::string name;  // file stem when several datasets are written
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::ordered_json extra;  // merged into JSON output only

    void meta(std::string key, std::string value) {
        metadata.emplace_back(std::move(key), std::move(value));
    }

    const std::string* find_meta(const std::string& key) const {
        for (const auto& [k, v] : metadata)
            if (k == key) return &v;
        return nullptr;
    }

    std::size_t column(const std::string& col) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == col) return i;
        throw std::out_of_range("Dataset: no column '" + col + "'");
    }

    std::vector<double> numeric_column(const std::string& col) const {
        const auto j = column(col);
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.push_back(std::get<double>(r.at(j)));
        return out;
    }
};

inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string format_bool(bool b) { return b ? "true" : "false"; }

inline double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("trailing characters in number: '" + s + "'");
    return v;
}

inline bool parse_bool(const std::string& s) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw std::invalid_argument("not a boolean: '" + s + "'");
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// ------------------------------------------------------------------- CSV

// RFC 4180 quoting for text fields that contain a comma or a quote.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline void write_csv(std::ostream& os, const Dataset& ds) {
    for (const auto& [k, v] : ds.metadata) os << "# " << k << '=' << v << '\n';
    for (std::size_t i = 0; i < ds.columns.size(); ++i) os << (i ? "," : "") << csv_field(ds.columns[i]);
    os << '\n';
    for (const auto& row : ds.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            if (const auto* d = std::get_if<double>(&row[i])) {
                os << format_double(*d);
            } else {
                os << csv_field(std::get<std::string>(row[i]));
            }
        }
        os << '\n';
    }
}

struct CsvField {
    std::string text;
    bool quoted{false};
};

inline std::vector<CsvField> split_csv_line(const std::string& line) {
    std::vector<CsvField> out;
    CsvField cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur.text.push_back('"');
                ++i;
            } else if (c == '"') {
                in_quotes = false;
            } else {
                cur.text.push_back(c);
            }
        } else if (c == '"') {
            in_quotes = true;
            cur.quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur = {};
        } else {
            cur.text.push_back(c);
        }
    }
    out.push_back(std::move(cur));
    return out;
}

inline Dataset read_csv(std::istream& is) {
    Dataset ds;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = trim(line.substr(1));
            const auto eq = body.find('=');
            if (eq == std::string::npos) continue;
            ds.meta(body.substr(0, eq), body.substr(eq + 1));
            continue;
        }
        if (!have_header) {
            for (auto& f : split_csv_line(line)) ds.columns.push_back(std::move(f.text));
            have_header = true;
            continue;
        }
        std::vector<Cell> row;
        for (auto& field : split_csv_line(line)) {
            if (field.quoted) {
                row.emplace_back(std::move(field.text));
                continue;
            }
            try {
                row.emplace_back(parse_double(field.text));
            } catch (const std::invalid_argument&) {
                row.emplace_back(std::move(field.text));
            }
        }
        ds.rows.push_back(std::move(row));
    }
    return ds;
}

// ------------------------------------------------------------------ JSON

inline nlohmann::ordered_json to_json(const Dataset& ds) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : ds.metadata) meta[k] = v;
    j["metadata"] = meta;
    for (auto it = ds.extra.begin(); it != ds.extra.end(); ++it) j[it.key()] = it.value();
    j["columns"] = ds.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : ds.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const auto& c : row) {
            if (const auto* d = std::get_if<double>(&c)) {
                r.push_back(*d);
            } else {
                r.push_back(std::get<std::string>(c));
            }
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

inline void write_json(std::ostream& os, const Dataset& ds) {
    // 17 significant digits, matching the CSV writer.
    os << to_json(ds).dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace) << '\n';
}

// --------------------------------------------------------- key=value config

// UTF-8 text, '#' starts a comment, blank lines ignored. Later keys win.
inline std::map<std::string, std::string> parse_key_value(std::istream& is) {
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        }
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

inline std::map<std::string, std::string> metadata_map(const Dataset& ds) {
    std::map<std::string, std::string> out;
    for (const auto& [k, v] : ds.metadata) out[k] = v;
    return out;
}

}  // namespace qwcav::io
