// lindblad.hpp: truncated-Fock master equation for the cavity (a) and the
// bosonic exciton mode (b), in the frame rotating at the cavity frequency:
//
//   H = delta b^dag b + i epsilon (a^dag - a) + i g (a^dag b - a b^dag)
//
// The cavity sees a squeezed vacuum (N, M real) and the exciton a vacuum bath.
// The dissipators are chosen so that the induced moment equations coincide with
// MomentEquations in linear_system.hpp.

#pragma once

#include "qwcav/ode.hpp"
#include "qwcav/params.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qwcav::oracle {

struct FockConfig {
    int cavity_dim{8};
    int exciton_dim{8};
    double dt{0.05};     // sampling interval of the returned trajectory
    double t_max{10.0};
    double rtol{1e-10};
    double tail_tolerance{1e-6};
    bool strict_tail{false};  // throw TruncationError instead of flagging
};

class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, double tail) : std::runtime_error(what), tail_mass(tail) {}
    double tail_mass;
};

struct LindbladSample {
    double t{0.0};
    double n_bb{0.0};
    double n_aa{0.0};
    double var_plus{0.0};   // variance of b + b^dag
    double var_minus{0.0};  // variance of i(b^dag - b)
    double trace{0.0};
    double tail{0.0};       // population in the top Fock level of either mode
};

struct LindbladTrajectory {
    std::vector<LindbladSample> samples;
    double max_tail{0.0};
    bool tail_ok{true};
    ode::Stats stats;
};

class FockModel {
public:
    using Sparse = Eigen::SparseMatrix<std::complex<double>>;
    using Dense = Eigen::MatrixXcd;

    FockModel(const SystemParams& p, int cavity_dim, int exciton_dim)
        : da_(cavity_dim), db_(exciton_dim) {
        if (da_ < 2 || db_ < 2) throw std::invalid_argument("FockModel: dims must be >= 2");
        const auto d = derive(p);
        const int dim = da_ * db_;
        a_ = Sparse(dim, dim);
        b_ = Sparse(dim, dim);
        std::vector<Eigen::Triplet<std::complex<double>>> ta, tb;
        for (int na = 0; na < da_; ++na)
            for (int nb = 0; nb < db_; ++nb) {
                const int i = index(na, nb);
                if (na > 0) ta.emplace_back(index(na - 1, nb), i, std::sqrt(double(na)));
                if (nb > 0) tb.emplace_back(index(na, nb - 1), i, std::sqrt(double(nb)));
            }
        a_.setFromTriplets(ta.begin(), ta.end());
        b_.setFromTriplets(tb.begin(), tb.end());
        ad_ = a_.adjoint();
        bd_ = b_.adjoint();

        const std::complex<double> I(0.0, 1.0);
        Sparse H = p.delta * Sparse(bd_ * b_) + (I * p.epsilon) * Sparse(ad_ - a_) +
                   (I * p.g) * Sparse(Sparse(ad_ * b_) - Sparse(a_ * bd_));
        const double kN = p.kappa * d.N;
        const double kM = p.kappa * d.M;
        const double kN1 = p.kappa * (d.N + 1.0);
        Sparse X = (-0.5 * kN1) * Sparse(ad_ * a_) + (-0.5 * kN) * Sparse(a_ * ad_) +
                   (0.5 * kM) * Sparse(Sparse(a_ * a_) + Sparse(ad_ * ad_)) +
                   (-0.5 * p.gamma) * Sparse(bd_ * b_);
        K_ = (-I) * H + X;
        Kd_ = K_.adjoint();
        kN_ = kN;
        kM_ = kM;
        kN1_ = kN1;
        gamma_ = p.gamma;
    }

    int index(int na, int nb) const { return na * db_ + nb; }
    int dim() const { return da_ * db_; }

    Dense operator()(double /*t*/, const Dense& rho) const {
        Dense out = K_ * rho + rho * Kd_;
        const Dense a_rho = a_ * rho;
        const Dense ad_rho = ad_ * rho;
        out += kN1_ * (a_rho * ad_) + kN_ * (ad_rho * a_) - kM_ * (ad_rho * ad_ + a_rho * a_);
        out += gamma_ * ((b_ * rho) * bd_);
        return out;
    }

    Dense one_exciton_state() const {
        Dense rho = Dense::Zero(dim(), dim());
        rho(index(0, 1), index(0, 1)) = 1.0;
        return rho;
    }

    LindbladSample observe(double t, const Dense& rho) const {
        LindbladSample s;
        s.t = t;
        s.trace = rho.trace().real();
        s.n_bb = (Dense(bd_ * b_) * rho).trace().real();
        s.n_aa = (Dense(ad_ * a_) * rho).trace().real();
        const std::complex<double> mb = (b_ * rho).trace();
        const std::complex<double> sbb = (Dense(b_ * b_) * rho).trace();
        const double qp = 2.0 * mb.real();
        const double qm = 2.0 * mb.imag();
        s.var_plus = 1.0 + 2.0 * s.n_bb + 2.0 * sbb.real() - qp * qp;
        s.var_minus = 1.0 + 2.0 * s.n_bb - 2.0 * sbb.real() - qm * qm;
        double top_a = 0.0, top_b = 0.0;
        for (int nb = 0; nb < db_; ++nb) top_a += rho(index(da_ - 1, nb), index(da_ - 1, nb)).real();
        for (int na = 0; na < da_; ++na) top_b += rho(index(na, db_ - 1), index(na, db_ - 1)).real();
        s.tail = std::max(top_a, top_b);
        return s;
    }

private:
    int da_, db_;
    Sparse a_, b_, ad_, bd_, K_, Kd_;
    double kN_{0.0}, kM_{0.0}, kN1_{0.0}, gamma_{0.0};
};

inline LindbladTrajectory lindblad_evolve(const SystemParams& p, const FockConfig& cfg) {
    if (!(cfg.dt > 0.0) || !(cfg.t_max > 0.0)) {
        throw std::invalid_argument("lindblad_evolve: dt and t_max must be > 0");
    }
    const FockModel model(p, cfg.cavity_dim, cfg.exciton_dim);
    const auto steps = static_cast<std::size_t>(std::llround(cfg.t_max / cfg.dt));
    std::vector<double> grid(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) grid[k] = std::min(cfg.t_max, cfg.dt * double(k));
    grid.back() = cfg.t_max;

    ode::Options opt;
    opt.rtol = cfg.rtol;
    opt.atol = 1e-3 * cfg.rtol;

    LindbladTrajectory out;
    const auto states = ode::integrate(model, model.one_exciton_state(), grid, opt, &out.stats);
    out.samples.reserve(states.size());
    for (std::size_t k = 0; k < states.size(); ++k) {
        out.samples.push_back(model.observe(grid[k], states[k]));
        out.max_tail = std::max(out.max_tail, out.samples.back().tail);
    }
    out.tail_ok = out.max_tail < cfg.tail_tolerance;
    if (!out.tail_ok && cfg.strict_tail) {
        std::ostringstream os;
        os << "lindblad_evolve: truncation tail " << out.max_tail << " exceeds "
           << cfg.tail_tolerance << " (dims " << cfg.cavity_dim << "x" << cfg.exciton_dim << ")";
        throw TruncationError(os.str(), out.max_tail);
    }
    return out;
}

}  // namespace qwcav::oracle
