// envelopes.hpp: strong-coupling time envelopes of the linear Langevin system
// and the auxiliary coefficient functions built from them.
//
// Frame: rotating at the cavity (= drive) frequency. Every envelope carries the
// common factor exp(-(Gamma + i delta/2) t).

#pragma once

#include "qwcav/params.hpp"

#include <cmath>
#include <complex>

namespace qwcav {

using cplx = std::complex<double>;

// Selects between the reconciled closed forms (default) and the forms exactly as
// originally printed, which are kept for comparison only.
enum class FormulaVariant { corrected, paper_literal };

inline const char* to_string(FormulaVariant v) noexcept {
    return v == FormulaVariant::corrected ? "corrected" : "paper-literal";
}

struct EnvelopeSet {
    cplx eta1;       // drive response of the cavity mode (units 1/rate)
    cplx eta_plus;   // a(0) -> a(t)
    cplx eta_minus;  // b(0) -> b(t)
    cplx eta3;       // b(0) -> a(t), and -a(0) -> b(t)
    cplx eta4;       // drive response of the exciton mode (units 1/rate)
};

struct IntensityCoeffs {
    double lambda1{0.0};
    double lambda2{0.0};
    double lambda3{0.0};
};

struct G2Coeffs {
    double A1{0.0};
    double A2{0.0};
    double A3{0.0};
};

namespace detail {

inline cplx decay_factor(const SystemParams& p, const DerivedParams& d, double t) {
    return std::exp(cplx(-d.Gamma * t, -0.5 * p.delta * t));
}

// sin(x t) / x, continuous through x = 0.
inline double sin_over(double x, double t, double scale) {
    if (std::abs(x) < 1e-8 * scale) {
        const double xt = x * t;
        return t * (1.0 - xt * xt / 6.0);
    }
    return std::sin(x * t) / x;
}

}  // namespace detail

inline EnvelopeSet envelopes(const SystemParams& p, const DerivedParams& d, double t) {
    const cplx e = detail::decay_factor(p, d, t);
    const double s = std::sin(d.mu * t);
    const double c = std::cos(d.mu * t);
    const double skew = 0.5 * p.delta / d.mu;

    EnvelopeSet out;
    out.eta1 = (s / d.mu) * e;
    out.eta_plus = cplx(c, skew * s) * e;
    out.eta_minus = cplx(c, -skew * s) * e;
    out.eta3 = (p.g / d.mu) * s * e;
    out.eta4 = (1.0 - cplx(c, skew * s) * e) / p.g;
    return out;
}

inline EnvelopeSet envelopes(const SystemParams& p, double t) {
    return envelopes(p, derive(p), t);
}

inline IntensityCoeffs intensity_coeffs(const SystemParams& p, const DerivedParams& d, double t) {
    const double mu = d.mu;
    const double s = std::sin(mu * t);
    const double c = std::cos(mu * t);
    const double skew = 0.5 * p.delta / mu;
    const double g2_mu2 = (p.g * p.g) / (mu * mu);

    IntensityCoeffs out;
    out.lambda1 = skew * skew * s * s + c * c;
    out.lambda2 = -0.25 * g2_mu2 * (1.0 / d.Gamma + std::sin(2.0 * mu * t) / mu);
    out.lambda3 = c * std::cos(0.5 * p.delta * t) + skew * s * std::sin(0.5 * p.delta * t);
    return out;
}

inline IntensityCoeffs intensity_coeffs(const SystemParams& p, double t) {
    return intensity_coeffs(p, derive(p), t);
}

// A1 multiplies M in the drive/reservoir interference term of g2(tau). The
// corrected first term is the sin(mu tau) contribution of the equal-time
// <a b> reservoir correlation; the printed variant is retained as-is.
inline G2Coeffs g2_coeffs(const SystemParams& p, const DerivedParams& d, double tau,
                          FormulaVariant variant = FormulaVariant::corrected) {
    const double mu = d.mu;
    const double G = d.Gamma;
    const double D = p.delta;
    const double g2 = p.g * p.g;
    const double s = std::sin(mu * tau);
    const double c = std::cos(mu * tau);
    const double ch = std::cos(0.5 * D * tau);
    const double sh = std::sin(0.5 * D * tau);
    const double lorentz = D * D + 4.0 * G * G;

    const double A1_main = g2 * c * (2.0 * G * ch - D * sh) / (mu * mu * lorentz);
    const double A1_osc = (variant == FormulaVariant::corrected)
                              ? g2 * s * ch / (2.0 * mu * mu * mu)
                              : (2.0 * mu * c * sh - D * ch * s) / (4.0 * mu * mu);

    G2Coeffs out;
    out.A1 = A1_osc + A1_main;
    out.A2 = g2 / (2.0 * G * mu * mu * mu) * (mu * c + G * s);
    out.A3 = (4.0 * mu * mu * c * c + D * D * s * s + 4.0 * G * mu * std::sin(2.0 * mu * tau)) /
             (16.0 * mu * mu * lorentz);
    return out;
}

inline G2Coeffs g2_coeffs(const SystemParams& p, double tau,
                          FormulaVariant variant = FormulaVariant::corrected) {
    return g2_coeffs(p, derive(p), tau, variant);
}

// Transient coefficient of kappa*M in the quadrature variances.
//
// Corrected: (g/mu)^2 [ (D sin Dt - 2 Gamma cos Dt) / (D^2 + 4 Gamma^2)
//                       - sin((D-2mu)t) / (2(D-2mu)) - sin((D+2mu)t) / (2(D+2mu)) ]
// The printed variant has sin(Dt/2) and an extra 1/mu^2 on the first fraction,
// which breaks the initial-state variance of 3.
inline double variance_coeff_lambda4(const SystemParams& p, const DerivedParams& d, double t,
                                     FormulaVariant variant = FormulaVariant::corrected) {
    const double mu = d.mu;
    const double G = d.Gamma;
    const double D = p.delta;
    const double lorentz = D * D + 4.0 * G * G;

    double first = 0.0;
    if (variant == FormulaVariant::corrected) {
        first = (D * std::sin(D * t) - 2.0 * G * std::cos(D * t)) / lorentz;
    } else {
        first = (D * std::sin(0.5 * D * t) - 2.0 * G * std::cos(D * t)) / (mu * mu * lorentz);
    }
    const double lower = 0.5 * detail::sin_over(D - 2.0 * mu, t, mu);
    const double upper = 0.5 * detail::sin_over(D + 2.0 * mu, t, mu);
    return (p.g * p.g) / (mu * mu) * (first - lower - upper);
}

inline double variance_coeff_lambda4(const SystemParams& p, double t,
                                     FormulaVariant variant = FormulaVariant::corrected) {
    return variance_coeff_lambda4(p, derive(p), t, variant);
}

}  // namespace qwcav
