// Shared helpers for the unit and acceptance tests.

#pragma once

#include "qwcav/params.hpp"

#include <random>
#include <vector>

namespace qwcav::testutil {

// Valid parameter sets spread over strong and moderate coupling.
inline std::vector<SystemParams> random_params(std::size_t n, std::uint64_t seed = 20240611) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> g(3.0, 50.0), rate(0.2, 3.0), delta(-10.0, 10.0),
        eps(0.0, 10.0), r(0.0, 3.0);
    std::vector<SystemParams> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        SystemParams p;
        p.g = g(rng);
        p.kappa = rate(rng);
        p.gamma = rate(rng);
        p.delta = delta(rng);
        p.epsilon = eps(rng);
        p.r = r(rng);
        out.push_back(p);
    }
    return out;
}

inline std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = a + (b - a) * double(i) / double(n - 1);
    out.back() = b;
    return out;
}

}  // namespace qwcav::testutil
