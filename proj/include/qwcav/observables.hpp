// observables.hpp: closed-form fluorescence observables of the exciton mode:
// intensity, two-time correlation, emission spectrum, g2(tau) and quadrature
// variances. The cavity starts in vacuum and the well holds one exciton.

#pragma once

#include "qwcav/envelopes.hpp"
#include "qwcav/params.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace qwcav {

struct SourceToggle {
    bool include_drive{true};      // epsilon terms
    bool include_squeezing{true};  // N, M terms

    bool operator==(const SourceToggle&) const = default;
};

enum class Quadrature { plus, minus };

inline double sign_of(Quadrature q) noexcept { return q == Quadrature::plus ? 1.0 : -1.0; }

// Raised by g2 when the steady intensity vanishes (epsilon = 0 and r = 0).
class DegenerateIntensityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// ------------------------------------------------------------------ intensity

inline double intensity_ss(const SystemParams& p, const DerivedParams& d) {
    const double coherent = (p.epsilon * p.epsilon) / (p.g * p.g);
    const double squeezed = p.g * p.g * p.kappa * d.N / (4.0 * d.Gamma * d.mu * d.mu);
    return coherent + squeezed;
}

inline double intensity_ss(const SystemParams& p) { return intensity_ss(p, derive(p)); }

// Mean exciton number <b^dag b>(t).
inline double intensity(const SystemParams& p, const DerivedParams& d, double t,
                        SourceToggle toggle = {}) {
    const auto lam = intensity_coeffs(p, d, t);
    const double e1 = std::exp(-d.Gamma * t);
    const double e2 = e1 * e1;

    double out = lam.lambda1 * e2;
    if (toggle.include_drive) {
        const double drive = (p.epsilon * p.epsilon) / (p.g * p.g);
        out += drive * (1.0 + lam.lambda1 * e2 - 2.0 * lam.lambda3 * e1);
    }
    if (toggle.include_squeezing) {
        const double kN = p.kappa * d.N;
        out += kN * (p.g * p.g / (4.0 * d.Gamma * d.mu * d.mu) + lam.lambda2 * e2);
    }
    return out;
}

inline double intensity(const SystemParams& p, double t, SourceToggle toggle = {}) {
    return intensity(p, derive(p), t, toggle);
}

// ------------------------------------------------------- two-time correlation

// Steady-state <b^dag(t) b(t + tau)>. The corrected variant oscillates as
// exp(-(Gamma + i delta/2) tau); the printed one uses exp(-(Gamma + i delta) tau).
inline cplx correlation_bb(const SystemParams& p, const DerivedParams& d, double tau,
                           FormulaVariant variant = FormulaVariant::corrected) {
    const double mu = d.mu;
    const double phase = (variant == FormulaVariant::corrected) ? 0.5 * p.delta : p.delta;
    const double amp = p.kappa * d.N * p.g * p.g / (4.0 * d.Gamma * mu * mu * mu);
    const cplx env = std::exp(cplx(-d.Gamma * tau, -phase * tau));
    const double shape = mu * std::cos(mu * tau) + d.Gamma * std::sin(mu * tau);
    return (p.epsilon * p.epsilon) / (p.g * p.g) + amp * env * shape;
}

inline cplx correlation_bb(const SystemParams& p, double tau,
                           FormulaVariant variant = FormulaVariant::corrected) {
    return correlation_bb(p, derive(p), tau, variant);
}

// ------------------------------------------------------------------- spectrum

struct SpectrumSample {
    double detuning_from_exciton{0.0};  // omega - omega_0
    double incoherent{0.0};
};

struct Spectrum {
    double coherent_weight{0.0};  // weight of the delta line at omega = omega_0
    std::vector<SpectrumSample> samples;
};

struct SpectrumPeaks {
    double upper{0.0};  // delta/2 + mu
    double lower{0.0};  // delta/2 - mu
    double hwhm{0.0};   // Gamma
    double fwhm{0.0};   // 2 Gamma
};

// Incoherent part: half-line Fourier transform of the fluctuating part of
// correlation_bb, written as two Lorentzians of half-width Gamma with linear
// numerators.
inline double spectrum_incoherent(const SystemParams& p, const DerivedParams& d, double x) {
    const double mu = d.mu;
    const double G2 = d.Gamma * d.Gamma;
    const double D = p.delta;
    const double pref = p.kappa * d.N * p.g * p.g / (16.0 * std::numbers::pi * mu * mu * mu);
    const double du = 0.5 * D + mu - x;
    const double dl = 0.5 * D - mu - x;
    return pref * ((D + 4.0 * mu - 2.0 * x) / (G2 + du * du) +
                   (-D + 4.0 * mu + 2.0 * x) / (G2 + dl * dl));
}

inline Spectrum spectrum(const SystemParams& p, std::span<const double> omega_grid) {
    const auto d = derive(p);
    Spectrum out;
    out.coherent_weight = (p.epsilon * p.epsilon) / (2.0 * std::numbers::pi * p.g * p.g);
    out.samples.reserve(omega_grid.size());
    for (double x : omega_grid) {
        if (!std::isfinite(x)) throw std::invalid_argument("spectrum: non-finite grid point");
        out.samples.push_back({x, spectrum_incoherent(p, d, x)});
    }
    return out;
}

inline SpectrumPeaks spectrum_peaks(const SystemParams& p) {
    const auto d = derive(p);
    return {0.5 * p.delta + d.mu, 0.5 * p.delta - d.mu, d.Gamma, 2.0 * d.Gamma};
}

// ------------------------------------------------------------------------- g2

inline double g2(const SystemParams& p, const DerivedParams& d, double tau,
                 FormulaVariant variant = FormulaVariant::corrected) {
    const double I = intensity_ss(p, d);
    if (!(I > 0.0)) {
        throw DegenerateIntensityError("g2: steady intensity is zero (epsilon = 0 and r = 0)");
    }
    const auto A = g2_coeffs(p, d, tau, variant);
    const double k = p.kappa;
    const double e1 = std::exp(-d.Gamma * tau);
    const double reservoir = 0.25 * k * k * (4.0 * d.M * d.M * A.A3 + d.N * d.N * A.A2 * A.A2);
    const double interference = k * (p.epsilon * p.epsilon) / (p.g * p.g) *
                                (d.M * A.A1 + d.N * A.A2 * std::cos(0.5 * p.delta * tau));
    return 1.0 + (reservoir * e1 * e1 + interference * e1) / (I * I);
}

inline double g2(const SystemParams& p, double tau,
                 FormulaVariant variant = FormulaVariant::corrected) {
    return g2(p, derive(p), tau, variant);
}

// --------------------------------------------------------- quadrature squeezing

inline double quad_variance_ss(const SystemParams& p, const DerivedParams& d, Quadrature q) {
    // N/(2G) +- 2 M G/L regrouped as (N +- M)/(2G) -+ M delta^2/(2 G L), with
    // N +- M = expm1(+-2r)/2, so large r does not cancel N against M.
    const double g2_mu2 = p.g * p.g / (d.mu * d.mu);
    const double lorentz = p.delta * p.delta + 4.0 * d.Gamma * d.Gamma;
    const double s = sign_of(q);
    const double n_pm = 0.5 * std::expm1(2.0 * s * p.r);
    const double bracket = n_pm / (2.0 * d.Gamma) -
                           s * d.M * p.delta * p.delta / (2.0 * d.Gamma * lorentz);
    return 1.0 + p.kappa * g2_mu2 * bracket;
}

inline double quad_variance_ss(const SystemParams& p, Quadrature q) {
    return quad_variance_ss(p, derive(p), q);
}

// Variance of b_+ = b + b^dag or b_- = i(b^dag - b); equals 3 at t = 0.
inline double quad_variance(const SystemParams& p, const DerivedParams& d, double t, Quadrature q,
                            FormulaVariant variant = FormulaVariant::corrected) {
    const auto lam = intensity_coeffs(p, d, t);
    const double l4 = variance_coeff_lambda4(p, d, t, variant);
    const double transient = 2.0 * lam.lambda1 + 2.0 * p.kappa * d.N * lam.lambda2 +
                             sign_of(q) * p.kappa * d.M * l4;
    return quad_variance_ss(p, d, q) + transient * std::exp(-2.0 * d.Gamma * t);
}

inline double quad_variance(const SystemParams& p, double t, Quadrature q,
                            FormulaVariant variant = FormulaVariant::corrected) {
    return quad_variance(p, derive(p), t, q, variant);
}

// Steady b_- variance at delta = 0: 1 - kappa/(kappa+gamma) (1 - e^{-2r}).
inline double resonant_squeezing_ss(double kappa, double gamma, double r) {
    if (!(kappa > 0.0) || !(gamma > 0.0) || !(r >= 0.0)) {
        throw std::invalid_argument("resonant_squeezing_ss: need kappa, gamma > 0 and r >= 0");
    }
    return 1.0 - kappa / (kappa + gamma) * (-std::expm1(-2.0 * r));
}

}  // namespace qwcav
