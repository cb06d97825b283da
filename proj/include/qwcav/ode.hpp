// ode.hpp: adaptive Dormand-Prince 5(4) integrator for Eigen-valued states
// (complex vectors for moment equations, complex matrices for density matrices).

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwcav::ode {

class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    double rtol{1e-10};
    double atol{1e-13};
    double h_init{0.0};  // 0 selects automatically
    double h_max{std::numeric_limits<double>::infinity()};
    std::size_t max_steps{50'000'000};
};

struct Stats {
    std::size_t accepted{0};
    std::size_t rejected{0};
    std::size_t rhs_calls{0};
};

namespace detail {

template <class State>
double weighted_max(const State& err, const State& y0, const State& y1, const Options& o) {
    const auto scale =
        (o.atol + o.rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array()).eval();
    return (err.cwiseAbs().array() / scale).maxCoeff();
}

template <class State>
double rms(const State& y) {
    return y.size() == 0 ? 0.0 : y.norm() / std::sqrt(double(y.size()));
}

}  // namespace detail

// Integrates y' = f(t, y) from t_grid.front() and returns the state at every
// grid point (the first entry is y0). The grid must be strictly increasing.
template <class State, class Rhs>
std::vector<State> integrate(Rhs&& f, const State& y0, std::span<const double> t_grid,
                             const Options& opt = {}, Stats* stats = nullptr) {
    if (t_grid.empty()) return {};
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) {
            throw std::invalid_argument("ode::integrate: time grid must be strictly increasing");
        }
    }

    // Dormand-Prince tableau.
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                     b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    Stats local;
    Stats& st = stats ? *stats : local;

    std::vector<State> out;
    out.reserve(t_grid.size());
    out.push_back(y0);

    double t = t_grid.front();
    State y = y0;
    State k1 = f(t, y);
    ++st.rhs_calls;

    double h = opt.h_init;
    if (!(h > 0.0)) {
        const double d0 = detail::rms(y);
        const double d1 = detail::rms(k1);
        h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h = std::min(h, t_grid.back() - t);
    }
    h = std::min(h, opt.h_max);

    std::size_t steps = 0;
    for (std::size_t gi = 1; gi < t_grid.size(); ++gi) {
        const double target = t_grid[gi];
        while (t < target) {
            if (++steps > opt.max_steps) {
                throw IntegrationError("ode::integrate: exceeded max_steps");
            }
            bool clipped = false;
            double step = h;
            if (t + step >= target) {
                step = target - t;
                clipped = true;
            }
            if (step < 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
                throw IntegrationError("ode::integrate: step size underflow at t = " +
                                       std::to_string(t));
            }

            const State k2 = f(t + c2 * step, (y + step * (a21 * k1)).eval());
            const State k3 = f(t + c3 * step, (y + step * (a31 * k1 + a32 * k2)).eval());
            const State k4 = f(t + c4 * step, (y + step * (a41 * k1 + a42 * k2 + a43 * k3)).eval());
            const State k5 = f(t + c5 * step,
                               (y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval());
            const State k6 = f(t + step, (y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 +
                                                      a65 * k5)).eval());
            const State y1 = (y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6)).eval();
            const State k7 = f(t + step, y1);
            st.rhs_calls += 6;

            const State err =
                (step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7)).eval();
            const double en = detail::weighted_max(err, y, y1, opt);
            if (!std::isfinite(en)) {
                throw IntegrationError("ode::integrate: non-finite error estimate");
            }

            const double factor =
                (en == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
            if (en <= 1.0) {
                t = clipped ? target : t + step;
                y = y1;
                k1 = k7;
                ++st.accepted;
                // A clipped step says nothing about the natural step length.
                if (!clipped) h = std::min(step * factor, opt.h_max);
            } else {
                ++st.rejected;
                h = step * std::max(factor, 0.2);
            }
        }
        out.push_back(y);
    }
    return out;
}

}  // namespace qwcav::ode
