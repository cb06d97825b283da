// verify.hpp: analytic closed forms against the exact linear-system oracles at
// one parameter point.
//
// Declared tolerance: the closed forms drop terms of relative size Gamma/mu, so
// each observable must agree to 3 Gamma/mu. Relative errors use the denominator
// max(|oracle|, 1e-3 max|oracle|) pointwise, or max|oracle| for the correlator
// and spectrum, which pass through zero.

#pragma once

#include "qwcav/observables.hpp"
#include "qwcav/oracle/linear_system.hpp"
#include "qwcav/params.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace qwcav {

struct VerifyEntry {
    std::string observable;
    double max_rel_error{0.0};
    double tolerance{0.0};
    bool pass{true};
    bool skipped{false};
    std::string note;
};

struct VerifyReport {
    SystemParams params;
    FormulaVariant variant{FormulaVariant::corrected};
    double tolerance{0.0};
    std::vector<VerifyEntry> entries;

    bool pass() const {
        return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
    }
};

inline double strong_coupling_tolerance(const SystemParams& p) {
    const auto d = derive(p);
    return 3.0 * d.Gamma / d.mu;
}

namespace detail {

inline double pointwise_rel_error(const std::vector<double>& a, const std::vector<double>& o) {
    double scale = 0.0;
    for (double v : o) scale = std::max(scale, std::abs(v));
    const double floor = 1e-3 * scale;
    double err = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double den = std::max(std::abs(o[i]), floor);
        if (den > 0.0) err = std::max(err, std::abs(a[i] - o[i]) / den);
    }
    return err;
}

template <class T>
double sup_rel_error(const std::vector<T>& a, const std::vector<T>& o) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num = std::max(num, std::abs(a[i] - o[i]));
        den = std::max(den, std::abs(o[i]));
    }
    return den > 0.0 ? num / den : num;
}

inline std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = a + (b - a) * double(i) / double(n - 1);
    out.back() = b;
    return out;
}

}  // namespace detail

inline VerifyReport verify(const SystemParams& p, FormulaVariant variant = FormulaVariant::corrected,
                           double t_max = 10.0, int points = 501) {
    const auto d = derive_checked(p);
    VerifyReport rep;
    rep.params = p;
    rep.variant = variant;
    rep.tolerance = strong_coupling_tolerance(p);

    auto add = [&](std::string name, double err, std::string note) {
        rep.entries.push_back({std::move(name), err, rep.tolerance, err <= rep.tolerance, false,
                               std::move(note)});
    };
    auto skip = [&](std::string name, std::string note) {
        rep.entries.push_back({std::move(name), 0.0, rep.tolerance, true, true, std::move(note)});
    };

    // Transients against the moment ODE from vacuum cavity + one exciton.
    const auto ts = detail::linspace(0.0, t_max, points);
    const auto traj = oracle::integrate_moments(p, oracle::MomentState::one_exciton(), ts);
    std::vector<double> ia, io, vpa, vpo, vma, vmo;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        ia.push_back(intensity(p, d, ts[i]));
        io.push_back(traj[i].n_bb);
        vpa.push_back(quad_variance(p, d, ts[i], Quadrature::plus, variant));
        vpo.push_back(traj[i].quad_variance(true));
        vma.push_back(quad_variance(p, d, ts[i], Quadrature::minus, variant));
        vmo.push_back(traj[i].quad_variance(false));
    }
    add("intensity", detail::pointwise_rel_error(ia, io), "moment ODE, t in [0, tmax]");
    add("variance_plus", detail::pointwise_rel_error(vpa, vpo),
        std::string("moment ODE; lambda4 ") + to_string(variant));
    add("variance_minus", detail::pointwise_rel_error(vma, vmo),
        std::string("moment ODE; lambda4 ") + to_string(variant));

    // Stationary two-time quantities against quantum regression.
    const auto taus = detail::linspace(0.0, 5.0, 501);
    const bool dark = p.epsilon == 0.0 && p.r == 0.0;
    if (dark) {
        skip("correlation", "skipped: steady state is the vacuum");
        skip("g2", "skipped: steady intensity is zero");
    } else {
        const auto rc = oracle::regression(p, taus);
        std::vector<cplx> ca;
        for (double t : taus) ca.push_back(correlation_bb(p, d, t, variant));
        add("correlation", detail::sup_rel_error(ca, rc.normal),
            std::string("regression, tau in [0, 5]; exponent ") +
                (variant == FormulaVariant::corrected ? "-(Gamma+i delta/2) tau" : "-(Gamma+i delta) tau"));
        const auto go = oracle::g2_gaussian(p, taus);
        std::vector<double> ga;
        for (double t : taus) ga.push_back(g2(p, d, t, variant));
        add("g2", detail::pointwise_rel_error(ga, go),
            std::string("Gaussian regression, tau in [0, 5]; A1 ") + to_string(variant));
    }

    if (d.N == 0.0) {
        skip("spectrum", "skipped: incoherent spectrum vanishes for r = 0");
    } else {
        const double half = d.mu + 10.0 * d.Gamma;
        const auto xs = detail::linspace(0.5 * p.delta - half, 0.5 * p.delta + half, 801);
        const auto so = oracle::spectrum_numeric(p, xs);
        std::vector<double> sa;
        for (double x : xs) sa.push_back(spectrum_incoherent(p, d, x));
        add("spectrum", detail::sup_rel_error(sa, so),
            "numeric Fourier transform of the regression correlator");
    }
    return rep;
}

}  // namespace qwcav
