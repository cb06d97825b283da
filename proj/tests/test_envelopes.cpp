#include "qwcav/envelopes.hpp"
#include "qwcav/oracle/linear_system.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace qwcav;
using std::numbers::pi;

TEST(Envelopes, InitialValues) {
    for (const auto& p : testutil::random_params(20)) {
        const auto e = envelopes(p, 0.0);
        EXPECT_NEAR(std::abs(e.eta1), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(e.eta_plus - 1.0), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(e.eta_minus - 1.0), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(e.eta3), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(e.eta4), 0.0, 1e-15);
    }
}

TEST(Envelopes, QuarterPeriodExchange) {
    const SystemParams p{5.0, 1.2, 1.0, 0.0, 0.0, 0.0};
    const auto e = envelopes(p, pi / 10.0);
    EXPECT_NEAR(e.eta3.real(), std::exp(-0.55 * pi / 10.0), 1e-12);
    EXPECT_NEAR(e.eta3.real(), 0.84131, 1e-5);
    EXPECT_NEAR(e.eta3.imag(), 0.0, 1e-15);
}

TEST(Envelopes, ExactWhenLossesBalanceOnResonance) {
    // kappa = gamma, delta = 0: the strong-coupling drift is the exact drift.
    const SystemParams p{4.0, 0.8, 0.8, 0.0, 0.0, 0.0};
    const auto A = oracle::drift_matrix(p).A;
    for (double t : testutil::linspace(0.0, 6.0, 61)) {
        const auto E = oracle::expm(A, t);
        const auto e = envelopes(p, t);
        EXPECT_NEAR(std::abs(E(0, 1) - e.eta3), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(E(1, 1) - e.eta_minus), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(E(0, 0) - e.eta_plus), 0.0, 1e-12);
    }
}

TEST(Envelopes, LongTimeLimit) {
    for (const auto& p : testutil::random_params(20)) {
        const auto d = derive(p);
        const auto e = envelopes(p, 50.0 / d.Gamma);
        EXPECT_LT(std::abs(e.eta1), 1e-10);
        EXPECT_LT(std::abs(e.eta_plus), 1e-10);
        EXPECT_LT(std::abs(e.eta_minus), 1e-10);
        EXPECT_LT(std::abs(e.eta3), 1e-10);
        EXPECT_NEAR(std::abs(e.eta4 - 1.0 / p.g), 0.0, 1e-10);
    }
}

TEST(Envelopes, FreeDecayIdentity) {
    for (auto p : testutil::random_params(20)) {
        p.epsilon = 0.0;
        p.r = 0.0;
        const auto d = derive(p);
        for (double t : testutil::linspace(0.0, 8.0, 81)) {
            const double lhs = std::norm(envelopes(p, d, t).eta_minus);
            const double rhs = intensity_coeffs(p, d, t).lambda1 * std::exp(-2.0 * d.Gamma * t);
            EXPECT_NEAR(lhs, rhs, 1e-12);
        }
    }
}

// Relative residual of the undriven mean equations when (eta3, eta_minus) is
// substituted for (a, b) with b(0) = 1.
static double drift_residual(double g) {
    const SystemParams p{g, 1.2, 1.0, 2.0, 0.0, 0.0};
    const auto A = oracle::drift_matrix(p).A;
    const auto d = derive(p);
    double worst = 0.0;
    const double h = 1e-6;
    for (double t : testutil::linspace(0.1, 5.0, 200)) {
        const auto e = envelopes(p, d, t);
        const auto ep = envelopes(p, d, t + h);
        const auto em = envelopes(p, d, t - h);
        oracle::Vec2 x(e.eta3, e.eta_minus);
        oracle::Vec2 dx((ep.eta3 - em.eta3) / (2 * h), (ep.eta_minus - em.eta_minus) / (2 * h));
        const double res = (dx - A * x).norm();
        worst = std::max(worst, res / (d.mu * x.norm()));
    }
    return worst;
}

TEST(Envelopes, DriftResidualShrinksWithCoupling) {
    double prev = drift_residual(5.0);
    for (double g : {10.0, 20.0, 40.0}) {
        const double cur = drift_residual(g);
        EXPECT_LT(cur, 0.6 * prev) << "g=" << g;
        prev = cur;
    }
}

TEST(IntensityCoeffs, InitialValues) {
    for (const auto& p : testutil::random_params(20)) {
        const auto d = derive(p);
        const auto l = intensity_coeffs(p, d, 0.0);
        EXPECT_DOUBLE_EQ(l.lambda1, 1.0);
        EXPECT_DOUBLE_EQ(l.lambda3, 1.0);
        EXPECT_NEAR(l.lambda2, -p.g * p.g / (4.0 * d.mu * d.mu * d.Gamma), 1e-14);
    }
}

TEST(IntensityCoeffs, HalfPeriodOnResonance) {
    const SystemParams p{5.0, 1.2, 1.0, 0.0, 0.0, 0.0};
    const auto l = intensity_coeffs(p, pi / 5.0);
    EXPECT_NEAR(l.lambda1, 1.0, 1e-14);
    EXPECT_NEAR(l.lambda3, -1.0, 1e-14);
}

TEST(IntensityCoeffs, ResonantLambdaOneIsCosSquared) {
    const SystemParams p{7.0, 1.2, 1.0, 0.0, 0.0, 0.0};
    for (double t : testutil::linspace(0.0, 5.0, 101)) {
        EXPECT_NEAR(intensity_coeffs(p, t).lambda1, std::pow(std::cos(7.0 * t), 2), 1e-14);
    }
}

TEST(G2Coeffs, PrintedResonantFormOfA1) {
    const SystemParams p{5.0, 1.2, 1.0, 0.0, 0.0, 1.0};
    const double G = 0.55;
    for (double tau : testutil::linspace(0.0, 4.0, 41)) {
        const auto a = g2_coeffs(p, tau, FormulaVariant::paper_literal);
        EXPECT_NEAR(a.A1, std::cos(5.0 * tau) / (2.0 * G), 1e-13);
    }
}

TEST(G2Coeffs, CorrectedResonantFormOfA1) {
    // The corrected form adds the sin(g tau)/(2g) term carried by the
    // equal-time <a b> correlation.
    const SystemParams p{5.0, 1.2, 1.0, 0.0, 0.0, 1.0};
    const double G = 0.55;
    for (double tau : testutil::linspace(0.0, 4.0, 41)) {
        const auto a = g2_coeffs(p, tau);
        EXPECT_NEAR(a.A1, std::cos(5.0 * tau) / (2.0 * G) + std::sin(5.0 * tau) / 10.0, 1e-13);
    }
}

TEST(G2Coeffs, ResonantA2) {
    const SystemParams p{5.0, 1.2, 1.0, 0.0, 0.0, 1.0};
    const double G = 0.55, g = 5.0;
    for (double tau : testutil::linspace(0.0, 4.0, 41)) {
        EXPECT_NEAR(g2_coeffs(p, tau).A2, (g * std::cos(g * tau) + G * std::sin(g * tau)) / (2 * G * g),
                    1e-13);
    }
}

TEST(G2Coeffs, ZeroDelayValues) {
    const SystemParams res{5.0, 1.2, 1.0, 0.0, 0.0, 1.0};
    const auto a = g2_coeffs(res, 0.0);
    EXPECT_NEAR(a.A2, 1.0 / 1.1, 1e-14);
    EXPECT_NEAR(a.A3, 1.0 / (16.0 * 0.55 * 0.55), 1e-14);
    for (const auto& p : testutil::random_params(20)) {
        const double G = derive(p).Gamma;
        EXPECT_NEAR(g2_coeffs(p, 0.0).A3, 1.0 / (4.0 * (p.delta * p.delta + 4 * G * G)), 1e-14);
    }
}

TEST(Lambda4, InitialValueCancelsSteadyTerm) {
    for (const auto& p : testutil::random_params(50)) {
        const auto d = derive(p);
        const double lorentz = p.delta * p.delta + 4 * d.Gamma * d.Gamma;
        const double expected = -2.0 * d.Gamma * p.g * p.g / (d.mu * d.mu * lorentz);
        EXPECT_NEAR(variance_coeff_lambda4(p, d, 0.0), expected, 1e-14);
    }
}

TEST(Lambda4, ResonantValueIsFinite) {
    const SystemParams p{5.0, 1.2, 1.0, 0.0, 0.0, 1.0};
    for (double t : testutil::linspace(0.0, 10.0, 101)) {
        EXPECT_TRUE(std::isfinite(variance_coeff_lambda4(p, t)));
        EXPECT_TRUE(std::isfinite(variance_coeff_lambda4(p, t, FormulaVariant::paper_literal)));
    }
}

TEST(Lambda4, ContinuousThroughRemovableSingularity) {
    // sin(x t)/x on both sides of the series switch.
    const double t = 3.0, scale = 50.0;
    const double x_series = 0.9e-8 * scale, x_direct = 1.1e-8 * scale;
    const double a = detail::sin_over(x_series, t, scale);
    const double b = detail::sin_over(x_direct, t, scale);
    auto series = [&](double x) { return t * (1.0 - x * x * t * t / 6.0); };
    EXPECT_NEAR(a, series(x_series), 4e-15);
    EXPECT_NEAR(b, series(x_direct), 4e-15);
    EXPECT_NEAR(a, b, 1e-11);
    EXPECT_EQ(detail::sin_over(0.0, t, scale), t);

    // Weak coupling at large detuning drives delta - 2 mu toward zero.
    for (double g : {1e-3, 1e-4, 1e-5}) {
        const SystemParams p{g, 1.0, 1.0, 100.0, 0.0, 1.0};
        for (double tt : {0.5, 2.0}) EXPECT_TRUE(std::isfinite(variance_coeff_lambda4(p, tt)));
    }
}

TEST(Lambda4, ContinuousInDelta) {
    SystemParams p{5.0, 1.2, 1.0, 0.0, 0.0, 1.0};
    const double t = 1.7;
    double prev = variance_coeff_lambda4(p, t);
    for (double D = 1e-4; D <= 4.0; D += 1e-4) {
        p.delta = D;
        const double cur = variance_coeff_lambda4(p, t);
        ASSERT_LT(std::abs(cur - prev), 1e-2) << "delta=" << D;
        prev = cur;
    }
}

TEST(Envelopes, DecayBound) {
    for (const auto& p : testutil::random_params(30)) {
        const auto d = derive(p);
        const double c = (d.mu + 0.5 * std::abs(p.delta)) / d.mu;
        for (double t : testutil::linspace(0.0, 10.0, 201)) {
            const auto e = envelopes(p, d, t);
            const double bound = c * std::exp(-d.Gamma * t) * (1.0 + 1e-12);
            EXPECT_LE(std::abs(e.eta_plus), bound);
            EXPECT_LE(std::abs(e.eta_minus), bound);
            EXPECT_LE(std::abs(e.eta3), bound);
        }
    }
}

TEST(IntensityCoeffs, LambdaOneRange) {
    for (const auto& p : testutil::random_params(30)) {
        const auto d = derive(p);
        const double lo = std::min(1.0, p.delta * p.delta / (4.0 * d.mu * d.mu));
        for (double t : testutil::linspace(0.0, 10.0, 201)) {
            const double l1 = intensity_coeffs(p, d, t).lambda1;
            EXPECT_GE(l1, lo - 1e-12);
            EXPECT_LE(l1, 1.0 + 1e-12);
        }
    }
}
