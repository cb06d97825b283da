// run_config.hpp: one fully specified CLI request, its metadata encoding and
// its validation. Every emitted dataset carries the RunConfig that produced it
// as "# key=value" lines, and from_metadata() rebuilds it exactly.

#pragma once

#include "qwcav/io.hpp"
#include "qwcav/observables.hpp"
#include "qwcav/params.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#ifndef QWCAV_VERSION
#define QWCAV_VERSION "1.0.0"
#endif

namespace qwcav {

inline constexpr const char* kVersion = QWCAV_VERSION;

enum class Command { intensity, spectrum, g2, variance, dressed, envelopes, verify, figure };
enum class OutputFormat { csv, json };
enum class Source { analytic, oracle };
enum class Axis { time, r };  // abscissa of intensity/variance datasets

inline const char* to_string(Command c) noexcept {
    switch (c) {
        case Command::intensity: return "intensity";
        case Command::spectrum: return "spectrum";
        case Command::g2: return "g2";
        case Command::variance: return "variance";
        case Command::dressed: return "dressed";
        case Command::envelopes: return "envelopes";
        case Command::verify: return "verify";
        case Command::figure: return "figure";
    }
    return "?";
}
inline const char* to_string(OutputFormat f) noexcept { return f == OutputFormat::csv ? "csv" : "json"; }
inline const char* to_string(Source s) noexcept { return s == Source::analytic ? "analytic" : "oracle"; }
inline const char* to_string(Axis a) noexcept { return a == Axis::time ? "time" : "r"; }

inline Command parse_command(const std::string& s) {
    for (auto c : {Command::intensity, Command::spectrum, Command::g2, Command::variance,
                   Command::dressed, Command::envelopes, Command::verify, Command::figure}) {
        if (s == to_string(c)) return c;
    }
    throw std::invalid_argument("unknown command '" + s + "'");
}
inline OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw std::invalid_argument("format must be csv or json, got '" + s + "'");
}
inline Source parse_source(const std::string& s) {
    if (s == "analytic") return Source::analytic;
    if (s == "oracle") return Source::oracle;
    throw std::invalid_argument("source must be analytic or oracle, got '" + s + "'");
}
inline Axis parse_axis(const std::string& s) {
    if (s == "time" || s == "t") return Axis::time;
    if (s == "r") return Axis::r;
    throw std::invalid_argument("axis must be time or r, got '" + s + "'");
}

struct GridSpec {
    double start{0.0};
    double stop{10.0};
    int count{501};

    bool operator==(const GridSpec&) const = default;

    std::vector<double> points() const {
        std::vector<double> out(static_cast<std::size_t>(count));
        const double h = (stop - start) / double(count - 1);
        for (int i = 0; i < count; ++i) out[i] = start + h * double(i);
        if (count > 0) out.back() = stop;
        return out;
    }
};

struct RunConfig {
    Command command{Command::intensity};
    SystemParams params;
    GridSpec grid;
    SourceToggle toggles;
    std::string output;  // file, or directory for `figure`; empty means stdout
    OutputFormat format{OutputFormat::csv};
    bool paper_literal{false};
    Source source{Source::analytic};
    Axis axis{Axis::time};
    int manifold{1};
    double unit{1.0};  // value of the rate unit (gamma) in output units
    std::string preset;

    bool operator==(const RunConfig&) const = default;

    FormulaVariant variant() const {
        return paper_literal ? FormulaVariant::paper_literal : FormulaVariant::corrected;
    }
};

// Grid used when neither config nor flags override it.
inline GridSpec default_grid(Command c, Axis a = Axis::time) {
    if (c == Command::spectrum) return {-15.0, 15.0, 1201};
    if (a == Axis::r) return {0.0, 3.0, 301};
    return {0.0, 10.0, 501};
}

inline RunConfig make_config(Command c, Axis a = Axis::time) {
    RunConfig cfg;
    cfg.command = c;
    cfg.axis = a;
    cfg.grid = default_grid(c, a);
    return cfg;
}

// The keys written by to_metadata, in order. from_metadata reads exactly these.
inline std::vector<std::pair<std::string, std::string>> to_metadata(const RunConfig& c) {
    using io::format_bool;
    using io::format_double;
    return {
        {"command", to_string(c.command)},
        {"g", format_double(c.params.g)},
        {"kappa", format_double(c.params.kappa)},
        {"gamma", format_double(c.params.gamma)},
        {"delta", format_double(c.params.delta)},
        {"epsilon", format_double(c.params.epsilon)},
        {"r", format_double(c.params.r)},
        {"grid_start", format_double(c.grid.start)},
        {"grid_stop", format_double(c.grid.stop)},
        {"grid_count", std::to_string(c.grid.count)},
        {"toggle_drive", format_bool(c.toggles.include_drive)},
        {"toggle_squeezing", format_bool(c.toggles.include_squeezing)},
        {"out", c.output},
        {"format", to_string(c.format)},
        {"paper_literal", format_bool(c.paper_literal)},
        {"source", to_string(c.source)},
        {"axis", to_string(c.axis)},
        {"manifold", std::to_string(c.manifold)},
        {"unit", format_double(c.unit)},
        {"preset", c.preset},
    };
}

inline int parse_int(const std::string& s) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer: '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
    return v;
}

// Applies one setting. Accepts the metadata keys plus the flag spellings used in
// config files (tmax, points, omega-min, omega-max, toggle-drive, ...).
// Returns false for keys it does not know.
inline bool apply_setting(RunConfig& c, std::string key, const std::string& value) {
    for (auto& ch : key)
        if (ch == '-') ch = '_';
    using io::parse_bool;
    using io::parse_double;
    auto& p = c.params;
    if (key == "command") c.command = parse_command(value);
    else if (key == "g") p.g = parse_double(value);
    else if (key == "kappa") p.kappa = parse_double(value);
    else if (key == "gamma") p.gamma = parse_double(value);
    else if (key == "delta") p.delta = parse_double(value);
    else if (key == "epsilon") p.epsilon = parse_double(value);
    else if (key == "r") p.r = parse_double(value);
    else if (key == "grid_start" || key == "omega_min") c.grid.start = parse_double(value);
    else if (key == "grid_stop" || key == "omega_max") c.grid.stop = parse_double(value);
    else if (key == "tmax") {
        c.grid.start = 0.0;
        c.grid.stop = parse_double(value);
    }
    else if (key == "grid_count" || key == "points") c.grid.count = parse_int(value);
    else if (key == "toggle_drive") c.toggles.include_drive = parse_bool(value);
    else if (key == "toggle_squeezing") c.toggles.include_squeezing = parse_bool(value);
    else if (key == "out") c.output = value;
    else if (key == "format") c.format = parse_format(value);
    else if (key == "paper_literal") c.paper_literal = parse_bool(value);
    else if (key == "source") c.source = parse_source(value);
    else if (key == "axis") c.axis = parse_axis(value);
    else if (key == "manifold" || key == "n") c.manifold = parse_int(value);
    else if (key == "unit") c.unit = parse_double(value);
    else if (key == "preset") c.preset = value;
    else return false;
    return true;
}

// Rebuilds the RunConfig from a metadata header. Keys that describe results
// (derived constants, variant notes, version) are ignored.
inline RunConfig from_metadata(const std::map<std::string, std::string>& meta) {
    RunConfig c;
    for (const auto& [k, _] : to_metadata(c)) {
        const auto it = meta.find(k);
        if (it == meta.end()) throw std::invalid_argument("metadata lacks key '" + k + "'");
        apply_setting(c, k, it->second);
    }
    return c;
}

inline ValidationReport validate(const RunConfig& c) {
    ValidationReport rep = validate(c.params);
    auto& err = rep.errors;
    const bool uses_grid = c.command != Command::dressed && c.command != Command::figure;
    if (uses_grid) {
        if (c.grid.count < 2) err.emplace_back("grid count must be >= 2");
        if (!std::isfinite(c.grid.start) || !std::isfinite(c.grid.stop)) {
            err.emplace_back("grid bounds must be finite");
        } else if (!(c.grid.start < c.grid.stop)) {
            err.emplace_back("grid start must be < stop");
        }
        const bool time_like = c.command != Command::spectrum;
        if (time_like && c.grid.start < 0.0) err.emplace_back("time / r grid must start at >= 0");
    }
    if (!(c.unit > 0.0) || !std::isfinite(c.unit)) err.emplace_back("unit must be finite and > 0");
    if (c.command == Command::dressed && c.manifold != 1 && c.manifold != 2) {
        err.emplace_back("dressed: manifold must be 1 or 2");
    }
    if (c.axis == Axis::r && c.command != Command::intensity && c.command != Command::variance) {
        err.emplace_back("axis=r is only available for intensity and variance");
    }
    if (c.source == Source::oracle &&
        !(c.command == Command::intensity || c.command == Command::variance ||
          c.command == Command::g2 || c.command == Command::spectrum)) {
        err.emplace_back("source=oracle is only available for intensity, variance, g2, spectrum");
    }
    if (c.command == Command::g2 && c.params.epsilon == 0.0 && c.params.r == 0.0) {
        err.emplace_back("g2 undefined: steady intensity is zero (epsilon = 0 and r = 0)");
    }
    if (c.command == Command::figure && c.preset.empty()) err.emplace_back("figure: --preset is required");
    rep.fatal = !rep.errors.empty();
    return rep;
}

}  // namespace qwcav
