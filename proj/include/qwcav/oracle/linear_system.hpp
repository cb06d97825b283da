// linear_system.hpp: exact treatment of the linear Langevin model, with no
// strong-coupling approximation:
//
//   da/dt = -kappa/2 a + g b + epsilon + F
//   db/dt = -(gamma/2 + i delta) b - g a + G
//
// The squeezed reservoir enters the second moments only through the sources
// +kappa N in <a^dag a> and +kappa M in <a^2>; the exciton bath is vacuum.

#pragma once

#include "qwcav/ode.hpp"
#include "qwcav/params.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace qwcav::oracle {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

// ---------------------------------------------------------------- drift

struct DriftMatrix {
    Mat2 A;      // [[-kappa/2, g], [-g, -(gamma/2 + i delta)]]
    Vec2 drive;  // (epsilon, 0)

    cplx trace() const { return A.trace(); }

    // Roots of the characteristic polynomial, larger imaginary part first.
    std::pair<cplx, cplx> eigenvalues() const {
        const cplx half_tr = 0.5 * A.trace();
        const cplx disc = std::sqrt(half_tr * half_tr - A.determinant());
        cplx l1 = half_tr + disc, l2 = half_tr - disc;
        if (l1.imag() < l2.imag()) std::swap(l1, l2);
        return {l1, l2};
    }
};

inline DriftMatrix drift_matrix(const SystemParams& p) {
    DriftMatrix d;
    d.A << -0.5 * p.kappa, p.g, -p.g, cplx(-0.5 * p.gamma, -p.delta);
    d.drive << p.epsilon, 0.0;
    return d;
}

// exp(A t) for a 2x2 matrix via Cayley-Hamilton.
inline Mat2 expm(const Mat2& A, double t) {
    const cplx half_tr = 0.5 * A.trace();
    const Mat2 B = A - half_tr * Mat2::Identity();
    const cplx s = std::sqrt(-B.determinant());  // B^2 = s^2 I
    const cplx st = s * t;
    const cplx sinh_over = (std::abs(st) < 1e-6) ? t * (1.0 + st * st / 6.0) : std::sinh(st) / s;
    return std::exp(half_tr * t) * (std::cosh(st) * Mat2::Identity() + sinh_over * B);
}

// ------------------------------------------------------------- moments

struct MomentState {
    cplx mean_a{0.0}, mean_b{0.0};
    double n_aa{0.0}, n_bb{0.0};  // <a^dag a>, <b^dag b>
    cplx c_ab{0.0};               // <a^dag b>
    cplx s_aa{0.0}, s_bb{0.0};    // <a^2>, <b^2>
    cplx s_ab{0.0};               // <a b>

    // Vacuum cavity, one exciton in the well.
    static MomentState one_exciton() {
        MomentState s;
        s.n_bb = 1.0;
        return s;
    }

    Mat2 normal() const {  // <x_i^dag x_j>
        Mat2 m;
        m << n_aa, c_ab, std::conj(c_ab), n_bb;
        return m;
    }
    Mat2 anomalous() const {  // <x_i x_j>
        Mat2 m;
        m << s_aa, s_ab, s_ab, s_bb;
        return m;
    }
    Vec2 means() const { return Vec2(mean_a, mean_b); }

    // Quadrature variance of b_+ = b + b^dag (plus) or b_- = i(b^dag - b).
    double quad_variance(bool plus) const {
        const double two_re_s = 2.0 * s_bb.real();
        if (plus) {
            const double q = 2.0 * mean_b.real();
            return 1.0 + 2.0 * n_bb + two_re_s - q * q;
        }
        const double q = 2.0 * mean_b.imag();
        return 1.0 + 2.0 * n_bb - two_re_s - q * q;
    }
};

using MomentVector = Eigen::Matrix<cplx, 8, 1>;

inline MomentVector pack(const MomentState& s) {
    MomentVector v;
    v << s.mean_a, s.mean_b, s.n_aa, s.n_bb, s.c_ab, s.s_aa, s.s_bb, s.s_ab;
    return v;
}

inline MomentState unpack(const MomentVector& v) {
    MomentState s;
    s.mean_a = v(0);
    s.mean_b = v(1);
    s.n_aa = v(2).real();
    s.n_bb = v(3).real();
    s.c_ab = v(4);
    s.s_aa = v(5);
    s.s_bb = v(6);
    s.s_ab = v(7);
    return s;
}

// Right-hand side of the closed first/second-moment system.
class MomentEquations {
public:
    explicit MomentEquations(const SystemParams& p) : drift_(drift_matrix(p)) {
        const auto d = derive(p);
        noise_n_ = p.kappa * d.N;
        noise_m_ = p.kappa * d.M;
    }

    MomentVector operator()(double /*t*/, const MomentVector& v) const {
        const Mat2& A = drift_.A;
        const Vec2& e = drift_.drive;
        const Vec2 m(v(0), v(1));
        Mat2 Nm;
        Nm << v(2), v(4), std::conj(v(4)), v(3);
        Mat2 S;
        S << v(5), v(7), v(7), v(6);

        const Vec2 dm = A * m + e;
        Mat2 dN = A.conjugate() * Nm + Nm * A.transpose() + e.conjugate() * m.transpose() +
                  m.conjugate() * e.transpose();
        dN(0, 0) += noise_n_;
        Mat2 dS = A * S + S * A.transpose() + e * m.transpose() + m * e.transpose();
        dS(0, 0) += noise_m_;

        MomentVector out;
        out << dm(0), dm(1), dN(0, 0), dN(1, 1), dN(0, 1), dS(0, 0), dS(1, 1), dS(0, 1);
        return out;
    }

private:
    DriftMatrix drift_;
    double noise_n_{0.0};
    double noise_m_{0.0};
};

inline std::vector<MomentState> integrate_moments(const SystemParams& p, const MomentState& init,
                                                  std::span<const double> t_grid,
                                                  ode::Options opt = {}) {
    if (!t_grid.empty() && t_grid.front() != 0.0) {
        throw std::invalid_argument("integrate_moments: time grid must start at 0");
    }
    const MomentEquations rhs(p);
    const auto traj = ode::integrate(rhs, pack(init), t_grid, opt);
    std::vector<MomentState> out;
    out.reserve(traj.size());
    for (const auto& v : traj) out.push_back(unpack(v));
    return out;
}

// Max |d/dt moment| at the given state; zero at a fixed point.
inline double steady_residual(const SystemParams& p, const MomentState& s) {
    return MomentEquations(p)(0.0, pack(s)).cwiseAbs().maxCoeff();
}

namespace detail {

// Solves L X + X R^T = -Q for 2x2 X (column-major Kronecker form).
inline Mat2 solve_sylvester(const Mat2& L, const Mat2& R, const Mat2& Q) {
    Eigen::Matrix4cd K = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            K.block<2, 2>(2 * i, 2 * j) += (i == j ? L : Mat2::Zero());
            K.block<2, 2>(2 * i, 2 * j) += R(i, j) * Mat2::Identity();
        }
    Eigen::Vector4cd q;
    q << Q(0, 0), Q(1, 0), Q(0, 1), Q(1, 1);
    const Eigen::Vector4cd x = K.partialPivLu().solve(-q);
    Mat2 X;
    X << x(0), x(2), x(1), x(3);
    return X;
}

}  // namespace detail

// Fluctuation covariances of the stationary state.
struct SteadyFluctuations {
    Vec2 means;
    Mat2 normal;     // <dx_i^dag dx_j>
    Mat2 anomalous;  // <dx_i dx_j>
};

inline SteadyFluctuations steady_fluctuations(const SystemParams& p) {
    const auto dr = drift_matrix(p);
    const auto d = derive(p);
    SteadyFluctuations f;
    f.means = -dr.A.partialPivLu().solve(dr.drive);
    Mat2 qn = Mat2::Zero();
    qn(0, 0) = p.kappa * d.N;
    Mat2 qs = Mat2::Zero();
    qs(0, 0) = p.kappa * d.M;
    f.normal = detail::solve_sylvester(dr.A.conjugate(), dr.A, qn);
    f.anomalous = detail::solve_sylvester(dr.A, dr.A, qs);
    return f;
}

// Stationary moments obtained algebraically (no long-time integration).
inline MomentState steady_state_moments(const SystemParams& p) {
    const auto f = steady_fluctuations(p);
    const Mat2 Nm = f.normal + f.means.conjugate() * f.means.transpose();
    const Mat2 S = f.anomalous + f.means * f.means.transpose();
    MomentState s;
    s.mean_a = f.means(0);
    s.mean_b = f.means(1);
    s.n_aa = Nm(0, 0).real();
    s.n_bb = Nm(1, 1).real();
    s.c_ab = Nm(0, 1);
    s.s_aa = S(0, 0);
    s.s_bb = S(1, 1);
    s.s_ab = S(0, 1);
    return s;
}

// Smallest eigenvalue of the Gram matrix <v_i^dag v_j>, v = (da, db, da^dag, db^dag).
// Non-negative for every physical state; it also implies the uncertainty bound.
inline double physicality_margin(const MomentState& s) {
    const Vec2 m = s.means();
    const Mat2 Nf = s.normal() - m.conjugate() * m.transpose();
    const Mat2 Sf = s.anomalous() - m * m.transpose();
    // <dx_i dx_j^dag> = delta_ij + <dx_j^dag dx_i>
    const Mat2 Af = Mat2::Identity() + Nf.transpose();
    Eigen::Matrix4cd R;
    R.block<2, 2>(0, 0) = Nf;                 // <dx_i^dag dx_j>
    R.block<2, 2>(0, 2) = Sf.conjugate();     // <dx_i^dag dx_j^dag>
    R.block<2, 2>(2, 0) = Sf;                 // <dx_i dx_j>
    R.block<2, 2>(2, 2) = Af;                 // <dx_i dx_j^dag>
    const Eigen::Matrix4cd H = 0.5 * (R + R.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(H, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

inline bool is_physical(const MomentState& s, double tol = 1e-8) {
    return s.n_aa >= -1e-10 && s.n_bb >= -1e-10 && physicality_margin(s) >= -tol;
}

// ------------------------------------------------------- regression correlators

struct RegressionCorrelators {
    std::vector<cplx> normal;      // <b^dag(0) b(tau)>, coherent part included
    std::vector<cplx> normal_fl;   // fluctuation part only
    std::vector<cplx> anomalous_fl;  // <db(tau) db(0)>
    cplx mean_b;
    double n_fl{0.0};              // <db^dag db>
};

inline RegressionCorrelators regression(const SystemParams& p, std::span<const double> tau_grid) {
    const auto dr = drift_matrix(p);
    const auto f = steady_fluctuations(p);
    RegressionCorrelators out;
    out.mean_b = f.means(1);
    out.n_fl = f.normal(1, 1).real();
    const cplx coherent = std::norm(out.mean_b);
    for (double tau : tau_grid) {
        if (tau < 0.0) throw std::invalid_argument("regression: tau must be >= 0");
        const Mat2 E = expm(dr.A, tau);
        const cplx c = E(1, 0) * f.normal(1, 0) + E(1, 1) * f.normal(1, 1);
        const cplx d = E(1, 0) * f.anomalous(0, 1) + E(1, 1) * f.anomalous(1, 1);
        out.normal_fl.push_back(c);
        out.normal.push_back(coherent + c);
        out.anomalous_fl.push_back(d);
    }
    return out;
}

inline std::vector<cplx> correlation_regression(const SystemParams& p,
                                                std::span<const double> tau_grid) {
    return regression(p, tau_grid).normal;
}

// Exact stationary g2(tau) of the Gaussian linear model, via Wick
// factorization with nonzero means.
inline std::vector<double> g2_gaussian(const SystemParams& p, std::span<const double> tau_grid) {
    const auto rc = regression(p, tau_grid);
    const double beta2 = std::norm(rc.mean_b);
    const double I = beta2 + rc.n_fl;
    if (!(I > 1e-300) || (p.epsilon == 0.0 && p.r == 0.0)) {
        throw std::domain_error("g2_gaussian: steady intensity is zero");
    }
    const cplx beta_c2 = std::conj(rc.mean_b) * std::conj(rc.mean_b);
    std::vector<double> out;
    out.reserve(tau_grid.size());
    for (std::size_t i = 0; i < tau_grid.size(); ++i) {
        const cplx c = rc.normal_fl[i];
        const cplx d = rc.anomalous_fl[i];
        const double num = std::norm(c) + std::norm(d) + 2.0 * beta2 * c.real() +
                           2.0 * (beta_c2 * d).real();
        out.push_back(1.0 + num / (I * I));
    }
    return out;
}

// ------------------------------------------------------------ numeric spectrum

class WindowTooShortError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SpectrumQuadrature {
    double window{0.0};  // 0 selects a window where the correlator is < 1e-8 of its start
    double step{0.0};    // 0 selects 1/200 of the fastest oscillation period
};

// (1/pi) Re int_0^T exp(i x tau) C_fl(tau) dtau with the coherent offset removed;
// C_fl is linearly interpolated between samples and each panel integrated exactly.
inline std::vector<double> spectrum_numeric(const SystemParams& p, std::span<const double> omega_grid,
                                            SpectrumQuadrature q = {}) {
    const auto dr = drift_matrix(p);
    const auto [l1, l2] = dr.eigenvalues();
    const double slowest = std::min(-l1.real(), -l2.real());
    const double fastest = std::max({std::abs(l1.imag()), std::abs(l2.imag()), 1e-12});
    constexpr double kDecay = 1e-8;

    double window = q.window > 0.0 ? q.window : 1.1 * std::log(1.0 / kDecay) / slowest + 2.0;
    double h = q.step > 0.0 ? q.step : 2.0 * std::numbers::pi / (200.0 * fastest);
    const auto K = static_cast<std::size_t>(std::ceil(window / h));
    h = window / double(K);

    std::vector<double> taus(K + 1);
    for (std::size_t k = 0; k <= K; ++k) taus[k] = h * double(k);
    const auto C = regression(p, taus).normal_fl;

    const double c0 = std::abs(C.front());
    if (c0 > 0.0) {
        const double tail_span = 2.0 * std::numbers::pi / fastest;
        double tail = 0.0;
        for (std::size_t k = K + 1; k-- > 0 && taus[k] >= window - tail_span;) {
            tail = std::max(tail, std::abs(C[k]));
        }
        if (tail > kDecay * c0) {
            throw WindowTooShortError("spectrum_numeric: correlator has not decayed within the window");
        }
    }

    std::vector<double> out;
    out.reserve(omega_grid.size());
    for (double x : omega_grid) {
        const double th = x * h;
        cplx I0, I1;  // int_0^h e^{ixs} ds, int_0^h s e^{ixs} ds / h
        if (std::abs(th) < 1e-3) {
            const cplx it(0.0, th);
            I0 = h * (1.0 + it / 2.0 + it * it / 6.0 + it * it * it / 24.0);
            I1 = h * (0.5 + it / 3.0 + it * it / 8.0 + it * it * it / 30.0);
        } else {
            const cplx e = std::exp(cplx(0.0, th));
            I0 = (e - 1.0) / cplx(0.0, x);
            I1 = e / cplx(0.0, x) + (e - 1.0) / (x * x * h);
        }
        const cplx step_phase = std::exp(cplx(0.0, th));
        cplx phase = 1.0;
        cplx acc = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            if ((k & 1023u) == 0) phase = std::exp(cplx(0.0, x * taus[k]));
            acc += phase * (C[k] * I0 + (C[k + 1] - C[k]) * I1);
            phase *= step_phase;
        }
        out.push_back(acc.real() / std::numbers::pi);
    }
    return out;
}

}  // namespace qwcav::oracle
