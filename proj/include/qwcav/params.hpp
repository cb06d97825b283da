// params.hpp: physical inputs, derived constants and regime diagnostics for a
// driven quantum-well microcavity coupled to a squeezed vacuum reservoir.

#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwcav {

// All rates share one unit (gamma = 1 by convention).
struct SystemParams {
    double g{5.0};        // exciton-photon coupling
    double kappa{1.2};    // cavity decay rate
    double gamma{1.0};    // exciton spontaneous decay rate
    double delta{0.0};    // exciton-cavity detuning omega_0 - omega_c (signed)
    double epsilon{0.0};  // pump amplitude, real and >= 0
    double r{0.0};        // reservoir squeeze parameter, >= 0

    bool operator==(const SystemParams&) const = default;
};

struct DerivedParams {
    double Gamma{0.0};     // (kappa + gamma) / 4
    double mu{0.0};        // sqrt(g^2 + delta^2 / 4)
    double N{0.0};         // sinh^2 r
    double M{0.0};         // sinh r cosh r
    double chi_plus{0.0};  // sqrt(4 g^2 + (delta + 2 mu)^2)
    double chi_minus{0.0}; // sqrt(4 g^2 + (delta - 2 mu)^2)
};

struct ValidationReport {
    double strong_coupling_ratio{0.0};  // g / max(kappa, gamma)
    std::vector<std::string> warnings;
    std::vector<std::string> errors;
    bool fatal{false};

    std::string summary() const {
        std::ostringstream os;
        os << "strong_coupling_ratio=" << strong_coupling_ratio;
        for (const auto& e : errors) os << "\nerror: " << e;
        for (const auto& w : warnings) os << "\nwarning: " << w;
        return os.str();
    }
};

// Below this g / max(kappa, gamma) the closed forms are flagged as unreliable.
inline constexpr double kStrongCouplingWarnRatio = 3.0;

inline bool all_finite(const SystemParams& p) noexcept {
    return std::isfinite(p.g) && std::isfinite(p.kappa) && std::isfinite(p.gamma) &&
           std::isfinite(p.delta) && std::isfinite(p.epsilon) && std::isfinite(p.r);
}

inline ValidationReport validate(const SystemParams& p) {
    ValidationReport rep;
    if (!all_finite(p)) rep.errors.emplace_back("all parameters must be finite");
    if (!(p.g > 0.0)) rep.errors.emplace_back("g must be > 0");
    if (!(p.kappa > 0.0)) rep.errors.emplace_back("kappa must be > 0");
    if (!(p.gamma > 0.0)) rep.errors.emplace_back("gamma must be > 0");
    if (!(p.epsilon >= 0.0)) rep.errors.emplace_back("epsilon must be >= 0");
    if (!(p.r >= 0.0)) rep.errors.emplace_back("r must be >= 0");

    const double loss = std::max(p.kappa, p.gamma);
    rep.strong_coupling_ratio = (loss > 0.0) ? p.g / loss : 0.0;
    if (rep.errors.empty() && rep.strong_coupling_ratio < kStrongCouplingWarnRatio) {
        std::ostringstream os;
        os << "g/max(kappa,gamma) = " << rep.strong_coupling_ratio
           << " is below " << kStrongCouplingWarnRatio
           << "; strong-coupling closed forms may be inaccurate";
        rep.warnings.push_back(os.str());
    }
    rep.fatal = !rep.errors.empty();
    return rep;
}

inline DerivedParams derive(const SystemParams& p) {
    if (!all_finite(p)) {
        throw std::invalid_argument("derive: non-finite parameter");
    }
    DerivedParams d;
    d.Gamma = 0.25 * (p.kappa + p.gamma);
    d.mu = std::sqrt(p.g * p.g + 0.25 * p.delta * p.delta);
    const double sh = std::sinh(p.r);
    d.N = sh * sh;
    d.M = sh * std::cosh(p.r);
    d.chi_plus = std::sqrt(4.0 * p.g * p.g + (p.delta + 2.0 * d.mu) * (p.delta + 2.0 * d.mu));
    d.chi_minus = std::sqrt(4.0 * p.g * p.g + (p.delta - 2.0 * d.mu) * (p.delta - 2.0 * d.mu));
    return d;
}

// Throws std::invalid_argument carrying the report summary when p is unusable.
inline DerivedParams derive_checked(const SystemParams& p) {
    const auto rep = validate(p);
    if (rep.fatal) throw std::invalid_argument(rep.summary());
    return derive(p);
}

}  // namespace qwcav
