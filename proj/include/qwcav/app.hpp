// app.hpp: evaluation of a RunConfig into datasets and their emission.
// The CLI in tools/ is a thin flag parser over run().

#pragma once

#include "qwcav/dressed.hpp"
#include "qwcav/figures.hpp"
#include "qwcav/io.hpp"
#include "qwcav/observables.hpp"
#include "qwcav/oracle/linear_system.hpp"
#include "qwcav/run_config.hpp"
#include "qwcav/verify.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwcav {

// Exit statuses of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // verify mismatch or numerical failure
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void add_header(io::Dataset& ds, const RunConfig& c) {
    ds.meta("software", "qwcav");
    ds.meta("version", kVersion);
    for (auto& kv : to_metadata(c)) ds.metadata.push_back(std::move(kv));
    const auto d = derive(c.params);
    ds.meta("Gamma", io::format_double(d.Gamma));
    ds.meta("mu", io::format_double(d.mu));
    ds.meta("N", io::format_double(d.N));
    ds.meta("M", io::format_double(d.M));
    const auto rep = validate(c.params);
    ds.meta("strong_coupling_ratio", io::format_double(rep.strong_coupling_ratio));
    for (const auto& w : rep.warnings) ds.meta("warning", w);

    const bool lit = c.paper_literal;
    ds.meta("formula_variant", to_string(c.variant()));
    ds.meta("lambda4_form", lit ? "printed: sin(delta t/2) terms, extra 1/mu^2"
                                : "corrected: sin(delta t) terms");
    ds.meta("g2_A1_form", lit ? "printed" : "corrected: sin(mu tau) cos(delta tau/2)/(2 mu^3) lead term");
    ds.meta("correlator_exponent", lit ? "-(Gamma+i delta) tau" : "-(Gamma+i delta/2) tau");
    ds.meta("spectrum_form", "two Lorentzians at delta/2 +- mu, half-width Gamma");
}

// Unit conversion: rates and frequencies scale by U, times and densities per
// unit frequency by 1/U.
inline double time_scale(const RunConfig& c) { return 1.0 / c.unit; }
inline double freq_scale(const RunConfig& c) { return c.unit; }

inline SystemParams apply_toggles(SystemParams p, SourceToggle t) {
    if (!t.include_drive) p.epsilon = 0.0;
    if (!t.include_squeezing) p.r = 0.0;
    return p;
}

// Oracle trajectory sampled on an arbitrary nonnegative grid.
inline std::vector<oracle::MomentState> moment_trajectory(const SystemParams& p,
                                                          const std::vector<double>& ts) {
    std::vector<double> grid;
    const bool prepend = ts.front() > 0.0;
    if (prepend) grid.push_back(0.0);
    grid.insert(grid.end(), ts.begin(), ts.end());
    auto traj = oracle::integrate_moments(p, oracle::MomentState::one_exciton(), grid);
    if (prepend) traj.erase(traj.begin());
    return traj;
}

inline io::Dataset eval_intensity(const RunConfig& c) {
    io::Dataset ds;
    add_header(ds, c);
    const auto xs = c.grid.points();
    const auto& p = c.params;
    if (c.axis == Axis::r) {
        ds.columns = {"r", "intensity_ss"};
        for (double r : xs) {
            SystemParams q = p;
            q.r = r;
            q = apply_toggles(q, c.toggles);
            const double v = c.source == Source::oracle ? oracle::steady_state_moments(q).n_bb
                                                        : intensity_ss(q);
            ds.rows.push_back({r, v});
        }
        return ds;
    }
    ds.columns = {"t", "intensity"};
    if (c.source == Source::oracle) {
        const auto traj = moment_trajectory(apply_toggles(p, c.toggles), xs);
        for (std::size_t i = 0; i < xs.size(); ++i)
            ds.rows.push_back({xs[i] * time_scale(c), traj[i].n_bb});
        return ds;
    }
    const auto d = derive(p);
    for (double t : xs) ds.rows.push_back({t * time_scale(c), intensity(p, d, t, c.toggles)});
    return ds;
}

inline io::Dataset eval_variance(const RunConfig& c) {
    io::Dataset ds;
    add_header(ds, c);
    const auto xs = c.grid.points();
    const auto v = c.variant();
    if (c.axis == Axis::r) {
        ds.columns = {"r", "var_plus_ss", "var_minus_ss"};
        for (double r : xs) {
            SystemParams q = c.params;
            q.r = r;
            if (c.source == Source::oracle) {
                const auto s = oracle::steady_state_moments(q);
                ds.rows.push_back({r, s.quad_variance(true), s.quad_variance(false)});
            } else {
                ds.rows.push_back({r, quad_variance_ss(q, Quadrature::plus),
                                   quad_variance_ss(q, Quadrature::minus)});
            }
        }
        return ds;
    }
    ds.columns = {"t", "var_plus", "var_minus"};
    if (c.source == Source::oracle) {
        const auto traj = moment_trajectory(c.params, xs);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            ds.rows.push_back({xs[i] * time_scale(c), traj[i].quad_variance(true),
                               traj[i].quad_variance(false)});
        }
        return ds;
    }
    const auto d = derive(c.params);
    for (double t : xs) {
        ds.rows.push_back({t * time_scale(c), quad_variance(c.params, d, t, Quadrature::plus, v),
                           quad_variance(c.params, d, t, Quadrature::minus, v)});
    }
    return ds;
}

inline io::Dataset eval_g2(const RunConfig& c) {
    io::Dataset ds;
    add_header(ds, c);
    ds.columns = {"tau", "g2"};
    const auto xs = c.grid.points();
    if (c.source == Source::oracle) {
        const auto vals = oracle::g2_gaussian(c.params, xs);
        for (std::size_t i = 0; i < xs.size(); ++i) ds.rows.push_back({xs[i] * time_scale(c), vals[i]});
        return ds;
    }
    const auto d = derive(c.params);
    for (double t : xs) ds.rows.push_back({t * time_scale(c), g2(c.params, d, t, c.variant())});
    return ds;
}

inline io::Dataset eval_spectrum(const RunConfig& c) {
    io::Dataset ds;
    add_header(ds, c);
    const auto xs = c.grid.points();
    const auto pk = spectrum_peaks(c.params);
    const auto sp = spectrum(c.params, xs);
    ds.meta("coherent_weight", io::format_double(sp.coherent_weight));
    ds.meta("peak_upper", io::format_double(pk.upper * freq_scale(c)));
    ds.meta("peak_lower", io::format_double(pk.lower * freq_scale(c)));
    ds.meta("hwhm", io::format_double(pk.hwhm * freq_scale(c)));
    ds.meta("fwhm", io::format_double(pk.fwhm * freq_scale(c)));
    ds.columns = {"omega_minus_omega0", "incoherent"};
    const double fs = freq_scale(c);
    if (c.source == Source::oracle) {
        const auto vals = oracle::spectrum_numeric(c.params, xs);
        for (std::size_t i = 0; i < xs.size(); ++i) ds.rows.push_back({xs[i] * fs, vals[i] / fs});
        return ds;
    }
    for (const auto& s : sp.samples) ds.rows.push_back({s.detuning_from_exciton * fs, s.incoherent / fs});
    return ds;
}

inline io::Dataset eval_envelopes(const RunConfig& c) {
    io::Dataset ds;
    add_header(ds, c);
    ds.columns = {"t",         "re_eta1",      "im_eta1",  "re_eta_plus", "im_eta_plus",
                  "re_eta_minus", "im_eta_minus", "re_eta3", "im_eta3",     "re_eta4",
                  "im_eta4"};
    const auto d = derive(c.params);
    const double ts = time_scale(c);
    for (double t : c.grid.points()) {
        const auto e = envelopes(c.params, d, t);
        ds.rows.push_back({t * ts, e.eta1.real() * ts, e.eta1.imag() * ts, e.eta_plus.real(),
                           e.eta_plus.imag(), e.eta_minus.real(), e.eta_minus.imag(), e.eta3.real(),
                           e.eta3.imag(), e.eta4.real() * ts, e.eta4.imag() * ts});
    }
    return ds;
}

inline io::Dataset eval_dressed(const RunConfig& c) {
    io::Dataset ds;
    add_header(ds, c);
    const auto m = dressed_manifold(c.params, c.manifold);
    const double fs = freq_scale(c);
    ds.columns = {"state", "eigenvalue", "residual"};
    for (const auto& b : m.basis_labels) {
        ds.columns.push_back("re" + b);
        ds.columns.push_back("im" + b);
    }
    std::vector<std::string> branches = c.manifold == 1 ? std::vector<std::string>{"+", "-"}
                                                         : std::vector<std::string>{"+", "0", "-"};
    nlohmann::ordered_json evals = nlohmann::ordered_json::array();
    nlohmann::ordered_json vecs = nlohmann::ordered_json::array();
    nlohmann::ordered_json fid = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < m.eigenvalues.size(); ++k) {
        std::vector<io::Cell> row{branches[k], m.eigenvalues[k] * fs, m.residuals[k]};
        nlohmann::ordered_json vj = nlohmann::ordered_json::array();
        for (const auto& z : m.eigenvectors[k]) {
            row.emplace_back(z.real());
            row.emplace_back(z.imag());
            vj.push_back({z.real(), z.imag()});
        }
        ds.rows.push_back(std::move(row));
        evals.push_back(m.eigenvalues[k] * fs);
        vecs.push_back(std::move(vj));

        const auto branch = branches[k] == "+" ? DressedBranch::plus
                            : branches[k] == "0" ? DressedBranch::zero
                                                 : DressedBranch::minus;
        const Eigen::Map<const Eigen::VectorXcd> v(m.eigenvectors[k].data(),
                                                   Eigen::Index(m.eigenvectors[k].size()));
        const auto tab = tabulated_state(c.params, c.manifold, branch, c.variant());
        const double f = state_fidelity(tab, v);
        ds.meta("table_fidelity_" + branches[k], io::format_double(f));
        fid[branches[k]] = f;
    }
    ds.extra["manifold"] = c.manifold;
    ds.extra["basis"] = m.basis_labels;
    ds.extra["eigenvalues"] = std::move(evals);
    ds.extra["eigenvectors"] = std::move(vecs);
    ds.extra["table_fidelity"] = std::move(fid);
    return ds;
}

inline io::Dataset report_dataset(const RunConfig& c, const VerifyReport& rep) {
    io::Dataset ds;
    add_header(ds, c);
    ds.meta("tolerance", io::format_double(rep.tolerance));
    ds.meta("tolerance_rule", "3 Gamma/mu");
    ds.meta("pass", io::format_bool(rep.pass()));
    ds.columns = {"observable", "max_rel_error", "tolerance", "pass", "note"};
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& e : rep.entries) {
        const std::string status = e.skipped ? "skipped" : io::format_bool(e.pass);
        ds.rows.push_back({e.observable, e.max_rel_error, e.tolerance, status, e.note});
        entries.push_back({{"observable", e.observable},
                           {"max_rel_error", e.max_rel_error},
                           {"tolerance", e.tolerance},
                           {"pass", e.pass},
                           {"skipped", e.skipped},
                           {"note", e.note}});
    }
    ds.extra["pass"] = rep.pass();
    ds.extra["entries"] = std::move(entries);
    return ds;
}

}  // namespace detail

// Single-dataset commands. Figures expand to their curves first.
inline io::Dataset evaluate_one(const RunConfig& c) {
    switch (c.command) {
        case Command::intensity: return detail::eval_intensity(c);
        case Command::variance: return detail::eval_variance(c);
        case Command::g2: return detail::eval_g2(c);
        case Command::spectrum: return detail::eval_spectrum(c);
        case Command::envelopes: return detail::eval_envelopes(c);
        case Command::dressed: return detail::eval_dressed(c);
        case Command::verify: {
            const auto rep = verify(c.params, c.variant(), c.grid.stop, c.grid.count);
            return detail::report_dataset(c, rep);
        }
        case Command::figure: break;
    }
    throw std::invalid_argument("evaluate_one: figure must be expanded first");
}

// Per-curve configs of a figure request. Output options of the request carry
// over; physics and grids come from the preset.
inline std::vector<FigureCurve> expand_figure(const RunConfig& req) {
    std::vector<FigurePreset> presets;
    if (req.preset == "all") {
        presets = figure_presets();
    } else {
        presets.push_back(find_preset(req.preset));
    }
    std::vector<FigureCurve> out;
    const std::string ext = req.format == OutputFormat::csv ? ".csv" : ".json";
    for (auto& fp : presets) {
        for (auto& curve : fp.curves) {
            curve.config.format = req.format;
            curve.config.paper_literal = req.paper_literal;
            curve.config.unit = req.unit;
            curve.config.output =
                req.output.empty() ? std::string{}
                                   : (std::filesystem::path(req.output) / (curve.label + ext)).string();
            out.push_back(std::move(curve));
        }
    }
    return out;
}

inline std::vector<io::Dataset> evaluate(const RunConfig& c) {
    if (c.command != Command::figure) {
        auto ds = evaluate_one(c);
        ds.name = to_string(c.command);
        return {std::move(ds)};
    }
    const auto curves = expand_figure(c);
    std::vector<std::future<io::Dataset>> jobs;
    jobs.reserve(curves.size());
    for (const auto& curve : curves) {
        jobs.push_back(std::async(std::launch::async, [&curve] {
            auto ds = evaluate_one(curve.config);
            ds.name = curve.label;
            ds.meta("curve", curve.label);
            return ds;
        }));
    }
    std::vector<io::Dataset> out;
    out.reserve(jobs.size());
    for (auto& j : jobs) out.push_back(j.get());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto fp = find_preset(curves[i].config.preset);
        out[i].meta("preset_description", fp.description);
        out[i].meta("illustrative_values", io::format_bool(fp.illustrative));
    }
    return out;
}

inline void write_dataset(std::ostream& os, const io::Dataset& ds, OutputFormat f) {
    if (f == OutputFormat::csv) {
        io::write_csv(os, ds);
    } else {
        io::write_json(os, ds);
    }
}

inline void write_file(const std::filesystem::path& path, const io::Dataset& ds, OutputFormat f) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw OutputError("cannot open '" + path.string() + "' for writing");
    write_dataset(os, ds, f);
    os.flush();
    if (!os) throw OutputError("write failed for '" + path.string() + "'");
}

// Validates, evaluates and writes. Diagnostics go to `err`, stdout datasets to `out`.
inline int run(const RunConfig& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    const auto rep = validate(c);
    if (rep.fatal) {
        err << "validation failed\n" << rep.summary() << '\n';
        return kExitValidation;
    }
    for (const auto& w : rep.warnings) err << "warning: " << w << '\n';

    std::vector<io::Dataset> sets;
    try {
        sets = evaluate(c);
    } catch (const DegenerateIntensityError& e) {
        err << "validation failed\n" << e.what() << '\n';
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        err << "validation failed\n" << e.what() << '\n';
        return kExitValidation;
    } catch (const std::domain_error& e) {
        err << "validation failed\n" << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "evaluation failed: " << e.what() << '\n';
        return kExitFailed;
    }

    try {
        if (c.command == Command::figure) {
            if (c.output.empty()) {
                for (const auto& ds : sets) write_dataset(out, ds, c.format);
            } else {
                std::error_code ec;
                std::filesystem::create_directories(c.output, ec);
                if (ec || !std::filesystem::is_directory(c.output)) {
                    throw OutputError("cannot create output directory '" + c.output + "'");
                }
                const std::string ext = c.format == OutputFormat::csv ? ".csv" : ".json";
                for (const auto& ds : sets) {
                    write_file(std::filesystem::path(c.output) / (ds.name + ext), ds, c.format);
                }
            }
        } else if (c.output.empty()) {
            write_dataset(out, sets.front(), c.format);
        } else {
            write_file(c.output, sets.front(), c.format);
        }
    } catch (const std::exception& e) {
        err << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }

    if (c.command == Command::verify) {
        const auto* pass = sets.front().find_meta("pass");
        if (!pass || *pass != "true") {
            err << "verify: at least one observable exceeds the declared tolerance\n";
            return kExitFailed;
        }
    }
    return kExitOk;
}

}  // namespace qwcav
