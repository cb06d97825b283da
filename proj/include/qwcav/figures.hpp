// figures.hpp: presets that regenerate the figure datasets. Each preset expands
// to one concrete RunConfig per curve. Values the captions state are fixed;
// the swept values they leave open are representative picks, flagged as
// illustrative in the preset and in every emitted file.

#pragma once

#include "qwcav/run_config.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwcav {

struct FigureCurve {
    std::string label;  // file stem, e.g. "fig2_r_0.5"
    RunConfig config;
};

struct FigurePreset {
    std::string name;
    std::string description;
    std::string sweep;         // name of the varied quantity
    bool illustrative{true};   // swept values chosen here, not given by the caption
    std::vector<FigureCurve> curves;
};

namespace detail {

inline std::string label_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

inline FigurePreset sweep_preset(std::string name, std::string description, std::string sweep,
                                 bool illustrative, const RunConfig& base,
                                 const std::vector<double>& values) {
    FigurePreset fp{std::move(name), std::move(description), sweep, illustrative, {}};
    for (double v : values) {
        RunConfig c = base;
        c.preset = fp.name;
        apply_setting(c, sweep, io::format_double(v));
        fp.curves.push_back({fp.name + "_" + sweep + "_" + label_value(v), c});
    }
    return fp;
}

inline RunConfig base_config(Command cmd, double g, double delta, double eps, double r,
                             Axis axis = Axis::time) {
    RunConfig c = make_config(cmd, axis);
    c.params = SystemParams{g, 1.2, 1.0, delta, eps, r};
    return c;
}

}  // namespace detail

inline std::vector<FigurePreset> figure_presets() {
    using detail::base_config;
    using detail::sweep_preset;
    std::vector<FigurePreset> out;

    out.push_back(sweep_preset(
        "fig1",
        "intensity vs t; kappa=1.2 g=5 delta=2 r=0 fixed; epsilon values illustrative",
        "epsilon", true, base_config(Command::intensity, 5.0, 2.0, 0.0, 0.0), {2.0, 5.0, 7.0}));

    out.push_back(sweep_preset(
        "fig2",
        "intensity vs t without drive; kappa=1.2 g=5 delta=2 epsilon=0 fixed; r values illustrative",
        "r", true, base_config(Command::intensity, 5.0, 2.0, 0.0, 0.0), {0.5, 1.0, 1.5}));

    out.push_back(sweep_preset(
        "fig3",
        "intensity vs t; kappa=1.2 g=5 r=1.8 epsilon=7 fixed; delta values illustrative",
        "delta", true, base_config(Command::intensity, 5.0, 0.0, 7.0, 1.8), {0.0, 2.0, 4.0}));

    out.push_back(sweep_preset(
        "fig4",
        "incoherent spectrum vs omega-omega0; kappa=1.2 g=6 r=1 fixed; delta values illustrative",
        "delta", true, base_config(Command::spectrum, 6.0, 0.0, 0.0, 1.0), {0.0, 2.0, 4.0}));

    {
        RunConfig base = base_config(Command::spectrum, 6.0, 0.0, 0.0, 1.0);
        base.grid = {-15.0, 15.0, 601};
        std::vector<double> deltas;
        for (int k = -10; k <= 10; ++k) deltas.push_back(double(k));
        out.push_back(sweep_preset(
            "fig5",
            "incoherent spectrum density over (omega-omega0, delta); one row per delta; "
            "kappa=1.2 g=6 r=1 fixed; delta range illustrative",
            "delta", true, base, deltas));
    }

    out.push_back(sweep_preset(
        "fig7",
        "g2 vs tau; kappa=1.2 g=5 delta=0 r=1 fixed; epsilon values illustrative",
        "epsilon", true, base_config(Command::g2, 5.0, 0.0, 0.0, 1.0), {0.0, 3.0, 7.0}));

    out.push_back(sweep_preset(
        "fig8",
        "steady quadrature variances vs r; kappa=1.2 g=5 fixed; delta values illustrative",
        "delta", true, base_config(Command::variance, 5.0, 0.0, 0.0, 0.0, Axis::r),
        {0.0, 0.5, 1.0, 2.0}));

    out.push_back(sweep_preset(
        "fig9",
        "quadrature variances vs t; kappa=1.2 g=5 r=1 fixed; delta values illustrative",
        "delta", true, base_config(Command::variance, 5.0, 0.0, 0.0, 1.0), {0.0, 0.5, 2.0}));

    return out;
}

inline std::vector<std::string> figure_preset_names() {
    std::vector<std::string> names;
    for (const auto& fp : figure_presets()) names.push_back(fp.name);
    return names;
}

inline FigurePreset find_preset(const std::string& name) {
    for (auto& fp : figure_presets())
        if (fp.name == name) return fp;
    std::string known;
    for (const auto& n : figure_preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown preset '" + name + "' (known: " + known + ", all)");
}

}  // namespace qwcav
