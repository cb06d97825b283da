// dressed.hpp: exciton-polariton ladder: direct diagonalization of the
// excitation-number-conserving blocks of H = delta b^dag b + i g (a^dag b - a b^dag),
// plus the tabulated closed-form eigenstates for cross-checking.
//
// Bare basis of manifold n, in order: |n,0>, |n-1,1>, ..., |0,n>, where |x,p>
// holds x excitons and p photons.

#pragma once

#include "qwcav/envelopes.hpp"
#include "qwcav/params.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwcav {

struct DressedManifold {
    int manifold{1};
    std::vector<double> eigenvalues;                 // descending
    std::vector<std::vector<cplx>> eigenvectors;     // unit norm, over the bare basis
    std::vector<std::string> basis_labels;           // "|x,p>"
    std::vector<double> residuals;                   // ||H v - lambda v||
};

inline Eigen::MatrixXcd manifold_hamiltonian(const SystemParams& p, int n) {
    if (n < 1) throw std::invalid_argument("manifold_hamiltonian: n must be >= 1");
    const int dim = n + 1;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        const int excitons = n - k;
        H(k, k) = p.delta * excitons;
        if (k + 1 < dim) {
            // a^dag b : |x,p> -> sqrt(x) sqrt(p+1) |x-1,p+1>
            const double amp = p.g * std::sqrt(double(excitons)) * std::sqrt(double(k + 1));
            H(k + 1, k) = cplx(0.0, amp);
            H(k, k + 1) = cplx(0.0, -amp);
        }
    }
    return H;
}

namespace detail {

// Global phase: first component above tolerance made real and positive.
inline void fix_phase(Eigen::VectorXcd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-12) {
            v *= std::conj(v(i)) / std::abs(v(i));
            return;
        }
    }
}

}  // namespace detail

inline DressedManifold dressed_manifold(const SystemParams& p, int n) {
    if (n != 1 && n != 2) throw std::invalid_argument("dressed_manifold: n must be 1 or 2");
    const Eigen::MatrixXcd H = manifold_hamiltonian(p, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("dressed_manifold: eigendecomposition failed");
    }

    DressedManifold out;
    out.manifold = n;
    for (int k = 0; k <= n; ++k) {
        out.basis_labels.push_back("|" + std::to_string(n - k) + "," + std::to_string(k) + ">");
    }
    const Eigen::Index dim = H.rows();
    for (Eigen::Index j = dim - 1; j >= 0; --j) {
        const double lam = solver.eigenvalues()(j);
        Eigen::VectorXcd v = solver.eigenvectors().col(j);
        v.normalize();
        detail::fix_phase(v);
        out.eigenvalues.push_back(lam);
        out.residuals.push_back((H * v - lam * v).norm());
        out.eigenvectors.emplace_back(v.data(), v.data() + v.size());
    }
    return out;
}

// ------------------------------------------------------ tabulated eigenstates

enum class DressedBranch { plus, zero, minus };

// Closed-form eigenstates. paper_literal reproduces the table entries as
// printed: |1>_- repeats the (delta + 2 mu) numerator of |1>_+, chi uses
// (delta^2 +- 2 mu)^2, the two-excitation +- rows are only right at delta = 0,
// and |2>_0 carries a sign slip on its first component and a norm of 2.
inline Eigen::VectorXcd tabulated_state(const SystemParams& p, int n, DressedBranch branch,
                                        FormulaVariant variant = FormulaVariant::corrected) {
    const auto d = derive(p);
    const double g = p.g;
    const double D = p.delta;
    const double mu = d.mu;
    const double sgn = (branch == DressedBranch::plus) ? 1.0 : -1.0;
    const cplx I(0.0, 1.0);
    const double r2 = std::sqrt(2.0);

    if (n == 1) {
        if (branch == DressedBranch::zero) {
            throw std::invalid_argument("tabulated_state: manifold 1 has no zero branch");
        }
        Eigen::VectorXcd v(2);
        if (variant == FormulaVariant::corrected) {
            v << D + sgn * 2.0 * mu, 2.0 * I * g;
            return v / (sgn > 0 ? d.chi_plus : d.chi_minus);
        }
        const double chi = std::sqrt(4.0 * g * g + std::pow(D * D + sgn * 2.0 * mu, 2));
        v << D + 2.0 * mu, 2.0 * I * g;
        return v / chi;
    }
    if (n != 2) throw std::invalid_argument("tabulated_state: n must be 1 or 2");

    Eigen::VectorXcd v(3);
    if (variant == FormulaVariant::corrected) {
        if (branch == DressedBranch::zero) {
            v << I * r2 * g, D, I * r2 * g;
            return v / (2.0 * mu);
        }
        v << I * r2 * g * (D + sgn * 2.0 * mu), -4.0 * g * g, I * r2 * g * (D - sgn * 2.0 * mu);
        return v / (4.0 * r2 * g * mu);
    }
    if (branch == DressedBranch::zero) {
        v << -I * r2 * g, D, I * r2 * g;
        return v / mu;
    }
    const double chi = std::sqrt(4.0 * g * g + std::pow(D * D + sgn * 2.0 * mu, 2));
    v << -I * r2 * g, D + sgn * 2.0 * mu, I * r2 * g;
    return v / chi;
}

// |<u|v>| / (|u| |v|); 1 means the same ray.
inline double state_fidelity(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
    return std::abs(u.dot(v)) / (u.norm() * v.norm());
}

}  // namespace qwcav
