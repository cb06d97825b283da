// qwcav: command-line front end.
//
//   qwcav <command> [flags]
//   commands: intensity spectrum g2 variance dressed envelopes verify figure
//
// Settings are layered: command defaults, then --config FILE (key=value),
// then explicit flags. Exit codes: 0 ok, 1 verify mismatch, 2 validation, 3 I/O.

#include "qwcav/app.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace {

struct FlagSet {
    // (setting key, raw value) for every flag given on the command line
    std::map<std::string, std::string> values;
    std::string config_file;
    bool paper_literal{false};
};

void add_common_flags(CLI::App& sub, FlagSet& fs) {
    auto value = [&](const std::string& flag, const std::string& key, const std::string& help) {
        sub.add_option_function<std::string>(
            flag, [&fs, key](const std::string& v) { fs.values[key] = v; }, help);
    };
    value("--g", "g", "exciton-photon coupling");
    value("--kappa", "kappa", "cavity decay rate");
    value("--gamma", "gamma", "exciton decay rate");
    value("--delta", "delta", "exciton-cavity detuning");
    value("--epsilon", "epsilon", "pump amplitude");
    value("--r", "r", "reservoir squeeze parameter");
    value("--tmax", "tmax", "end of the time grid (start 0)");
    value("--points", "points", "number of grid points");
    value("--omega-min", "omega_min", "spectrum grid start (omega - omega0)");
    value("--omega-max", "omega_max", "spectrum grid stop");
    value("--preset", "preset", "figure preset: fig1..fig5, fig7..fig9, all");
    value("--format", "format", "csv or json");
    value("--out", "out", "output file (directory for figure); default stdout");
    value("--toggle-drive", "toggle_drive", "include drive terms: true/false");
    value("--toggle-squeezing", "toggle_squeezing", "include reservoir terms: true/false");
    value("--source", "source", "analytic or oracle");
    value("--axis", "axis", "time or r (intensity, variance)");
    value("--n,--manifold", "manifold", "excitation manifold for dressed: 1 or 2");
    value("--unit", "unit", "value of the rate unit in output units");
    sub.add_flag("--paper-literal", fs.paper_literal, "use the closed forms exactly as printed");
    sub.add_option("--config", fs.config_file, "flat key=value settings file");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace qwcav;

    CLI::App app{"Driven quantum-well microcavity with a squeezed reservoir: observables, "
                 "oracle checks and figure datasets"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    FlagSet fs;
    const std::vector<std::pair<Command, std::string>> commands = {
        {Command::intensity, "mean exciton number <b^dag b>(t)"},
        {Command::spectrum, "incoherent fluorescence spectrum"},
        {Command::g2, "second-order coherence g2(tau)"},
        {Command::variance, "exciton quadrature variances"},
        {Command::dressed, "dressed states of manifold 1 or 2"},
        {Command::envelopes, "strong-coupling envelope functions"},
        {Command::verify, "closed forms against the exact oracles"},
        {Command::figure, "figure datasets from a preset"},
    };
    std::map<CLI::App*, Command> lookup;
    for (const auto& [cmd, help] : commands) {
        auto* sub = app.add_subcommand(to_string(cmd), help);
        add_common_flags(*sub, fs);
        lookup[sub] = cmd;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    Command cmd = Command::intensity;
    for (auto* sub : app.get_subcommands()) cmd = lookup.at(sub);

    std::map<std::string, std::string> file_settings;
    if (!fs.config_file.empty()) {
        std::ifstream in(fs.config_file);
        if (!in) {
            std::cerr << "I/O error: cannot read config '" << fs.config_file << "'\n";
            return kExitIo;
        }
        try {
            file_settings = io::parse_key_value(in);
        } catch (const std::exception& e) {
            std::cerr << "validation failed\n" << e.what() << '\n';
            return kExitValidation;
        }
    }

    RunConfig cfg;
    try {
        // The axis picks the default grid, so resolve it before anything else.
        Axis axis = Axis::time;
        if (auto it = file_settings.find("axis"); it != file_settings.end()) axis = parse_axis(it->second);
        if (auto it = fs.values.find("axis"); it != fs.values.end()) axis = parse_axis(it->second);
        cfg = make_config(cmd, axis);
        for (const auto& [k, v] : file_settings) {
            if (k == "command") continue;
            if (!apply_setting(cfg, k, v)) throw std::invalid_argument("unknown config key '" + k + "'");
        }
        for (const auto& [k, v] : fs.values) apply_setting(cfg, k, v);
        if (fs.paper_literal) cfg.paper_literal = true;
        cfg.command = cmd;
    } catch (const std::exception& e) {
        std::cerr << "validation failed\n" << e.what() << '\n';
        return kExitValidation;
    }

    return run(cfg);
}
