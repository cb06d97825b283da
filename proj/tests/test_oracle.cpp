#include "qwcav/observables.hpp"
#include "qwcav/oracle/linear_system.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace qwcav;
using namespace qwcav::oracle;

TEST(Drift, TraceAndEigenvalues) {
    for (const auto& p : testutil::random_params(20)) {
        const auto dr = drift_matrix(p);
        const auto d = derive(p);
        EXPECT_NEAR(std::abs(dr.trace() - cplx(-2.0 * d.Gamma, -p.delta)), 0.0, 1e-13);
        const auto [l1, l2] = dr.eigenvalues();
        EXPECT_NEAR(std::abs(l1 + l2 - dr.trace()), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(l1 * l2 - dr.A.determinant()), 0.0, 1e-9 * std::abs(dr.A.determinant()));
        EXPECT_GE(l1.imag(), l2.imag());
        EXPECT_LT(l1.real(), 0.0);
        EXPECT_LT(l2.real(), 0.0);
    }
}

TEST(Drift, ExpmSatisfiesGroupLaw) {
    const auto A = drift_matrix(SystemParams{5.0, 1.2, 1.0, 2.0, 0.0, 0.0}).A;
    const Mat2 lhs = expm(A, 0.7) * expm(A, 1.1);
    EXPECT_LT((lhs - expm(A, 1.8)).norm(), 1e-13);
    EXPECT_LT((expm(A, 0.0) - Mat2::Identity()).norm(), 1e-15);
}

TEST(Moments, InitialStateIsReturnedFirst) {
    const SystemParams p{5.0, 1.2, 1.0, 2.0, 3.0, 0.5};
    const auto grid = testutil::linspace(0.0, 2.0, 5);
    const auto traj = integrate_moments(p, MomentState::one_exciton(), grid);
    ASSERT_EQ(traj.size(), grid.size());
    EXPECT_EQ(traj[0].n_bb, 1.0);
    EXPECT_EQ(traj[0].n_aa, 0.0);
}

TEST(Moments, GridMustStartAtZero) {
    const std::vector<double> grid{0.5, 1.0};
    EXPECT_THROW(integrate_moments(SystemParams{}, MomentState::one_exciton(), grid), std::invalid_argument);
}

TEST(Moments, UndrivenTotalPopulationDecays) {
    SystemParams p{5.0, 1.2, 1.0, 1.0, 0.0, 0.0};
    const auto grid = testutil::linspace(0.0, 10.0, 201);
    const auto traj = integrate_moments(p, MomentState::one_exciton(), grid);
    for (std::size_t i = 1; i < traj.size(); ++i) {
        EXPECT_LE(traj[i].n_aa + traj[i].n_bb, traj[i - 1].n_aa + traj[i - 1].n_bb + 1e-12);
    }
    EXPECT_LT(traj.back().n_bb, 1e-3);
}

TEST(Moments, MatchesExactPropagatorWithoutSources) {
    // With no drive or reservoir, <b^dag b>(t) = |[exp(A t)]_{bb}|^2.
    const SystemParams p{6.0, 0.7, 1.3, -2.5, 0.0, 0.0};
    const auto A = drift_matrix(p).A;
    const auto grid = testutil::linspace(0.0, 6.0, 61);
    const auto traj = integrate_moments(p, MomentState::one_exciton(), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_NEAR(traj[i].n_bb, std::norm(expm(A, grid[i])(1, 1)), 1e-10);
    }
}

TEST(SteadyState, IsAFixedPoint) {
    for (const auto& p : testutil::random_params(50)) {
        const auto s = steady_state_moments(p);
        const double scale = std::max(1.0, s.n_aa + s.n_bb);
        EXPECT_LT(steady_residual(p, s) / scale, 1e-10);
        EXPECT_TRUE(is_physical(s));
    }
}

TEST(SteadyState, LongTimeIntegrationConverges) {
    const SystemParams p{5.0, 1.2, 1.0, 2.0, 4.0, 0.8};
    const std::vector<double> grid{0.0, 60.0};
    const auto traj = integrate_moments(p, MomentState::one_exciton(), grid);
    const auto s = steady_state_moments(p);
    EXPECT_NEAR(traj.back().n_bb, s.n_bb, 1e-8 * s.n_bb);
    EXPECT_NEAR(std::abs(traj.back().s_bb - s.s_bb), 0.0, 1e-8 * std::max(1.0, std::abs(s.s_bb)));
}

TEST(SteadyState, ClosedFormIntensityWithinFivePercentAtStrongCoupling) {
    const SystemParams p{5.0, 1.2, 1.0, 2.0, 7.0, 1.8};
    const double exact = steady_state_moments(p).n_bb;
    EXPECT_NEAR(exact, 6.399185, 1e-6);
    EXPECT_NEAR(intensity_ss(p) / exact - 1.0, 0.0, 0.05);
}

TEST(Physicality, DetectsViolations) {
    MomentState s;
    EXPECT_TRUE(is_physical(s));  // vacuum
    s.n_bb = 0.1;
    s.s_bb = 1.0;  // |<b^2>|^2 > n (n + 1)
    EXPECT_FALSE(is_physical(s));
}

TEST(Regression, ZeroDelayIsIntensity) {
    for (const auto& p : testutil::random_params(20)) {
        const std::vector<double> tau{0.0};
        const auto rc = regression(p, tau);
        EXPECT_NEAR(rc.normal[0].real(), steady_state_moments(p).n_bb, 1e-10 * std::max(1.0, rc.normal[0].real()));
        EXPECT_NEAR(rc.normal[0].imag(), 0.0, 1e-10);
    }
}

TEST(Regression, RejectsNegativeDelay) {
    const std::vector<double> tau{-0.1};
    EXPECT_THROW(regression(SystemParams{}, tau), std::invalid_argument);
}

TEST(GaussianG2, CoherentDriveOnly) {
    const SystemParams p{5.0, 1.2, 1.0, 2.0, 4.0, 0.0};
    const auto tau = testutil::linspace(0.0, 5.0, 11);
    for (double v : g2_gaussian(p, tau)) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(GaussianG2, SqueezedVacuumZeroDelay) {
    // Squeezed thermal-like state: g2(0) = 2 + |<b^2>|^2 / n^2.
    const SystemParams p{40.0, 1.2, 1.0, 0.0, 0.0, 1.0};
    const std::vector<double> tau{0.0, 200.0};
    const auto s = steady_state_moments(p);
    const auto v = g2_gaussian(p, tau);
    EXPECT_NEAR(v[0], 2.0 + std::norm(s.s_bb) / (s.n_bb * s.n_bb), 1e-10);
    EXPECT_NEAR(v[1], 1.0, 1e-10);
    // On resonance the exciton inherits |<b^2>|^2 / n^2 = M^2 / N^2 = 1 + 1/N exactly.
    const double N = derive(p).N;
    EXPECT_NEAR(v[0], 3.0 + 1.0 / N, 1e-10);
}

TEST(GaussianG2, DegenerateThrows) {
    const std::vector<double> tau{0.0};
    EXPECT_THROW(g2_gaussian(SystemParams{5.0, 1.2, 1.0, 0.0, 0.0, 0.0}, tau), std::domain_error);
}

TEST(NumericSpectrum, VanishesWithoutReservoir) {
    const SystemParams p{5.0, 1.2, 1.0, 2.0, 3.0, 0.0};
    const auto grid = testutil::linspace(-10.0, 10.0, 21);
    for (double v : spectrum_numeric(p, grid)) EXPECT_NEAR(v, 0.0, 1e-14);
}

TEST(NumericSpectrum, NonNegativeAndIntegratesToFluctuationPopulation) {
    const SystemParams p{6.0, 1.2, 1.0, 2.0, 0.0, 1.0};
    const auto grid = testutil::linspace(-40.0, 40.0, 4001);
    const auto S = spectrum_numeric(p, grid);
    double integral = 0.0;
    for (std::size_t i = 0; i < S.size(); ++i) {
        EXPECT_GE(S[i], -1e-8);
        if (i > 0) integral += 0.5 * (S[i] + S[i - 1]) * (grid[i] - grid[i - 1]);
    }
    const double n_fl = regression(p, std::vector<double>{0.0}).n_fl;
    EXPECT_NEAR(integral / n_fl, 1.0, 0.02);
}

TEST(NumericSpectrum, AgreesWithClosedFormAtStrongCoupling) {
    const SystemParams p{40.0, 1.2, 1.0, 3.0, 0.0, 1.0};
    const auto d = derive(p);
    std::vector<double> grid;
    for (double c : {0.5 * p.delta + d.mu, 0.5 * p.delta - d.mu})
        for (double off : {-2.0, -0.5, 0.0, 0.5, 2.0}) grid.push_back(c + off * d.Gamma);
    const auto S = spectrum_numeric(p, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_NEAR(S[i] / spectrum_incoherent(p, d, grid[i]), 1.0, 0.01) << "x=" << grid[i];
    }
}

TEST(NumericSpectrum, StepRefinementIsStable) {
    const SystemParams p{6.0, 1.2, 1.0, 0.0, 0.0, 1.0};
    const std::vector<double> grid{-6.0, 0.0, 6.0};
    const auto a = spectrum_numeric(p, grid);
    const auto b = spectrum_numeric(p, grid, SpectrumQuadrature{0.0, 0.002});
    for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-4 * std::abs(a[i]) + 1e-10);
}

TEST(NumericSpectrum, ShortWindowIsReported) {
    const SystemParams p{6.0, 1.2, 1.0, 0.0, 0.0, 1.0};
    const std::vector<double> grid{0.0};
    EXPECT_THROW(spectrum_numeric(p, grid, SpectrumQuadrature{2.0, 0.0}), WindowTooShortError);
}
