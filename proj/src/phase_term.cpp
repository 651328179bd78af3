#include "mixedpowers/phase_term.hpp"

#include "mixedpowers/errors.hpp"

namespace mixedpowers {

using bmp::abs;
using bmp::exp;
using bmp::floor;
using bmp::log;
using bmp::pow;

namespace {
Real pow10(int e) {
    Real r = 1;
    for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= 10;
    return e < 0 ? Real(1) / r : r;
}
// anchors stop just short of +-pi so a factor zero sitting exactly on the
// negative real axis (|z| = 1 with factor 1+z) never becomes an anchor; the
// integrand is still evaluable arbitrarily close to the endpoint
Real theta_cap() { return pi() * (Real(1) - Real(1) / Real(1 << 16)); }
}  // namespace

ContourBranch::ContourBranch(FactorPtr f, Cplx z0) : f_(std::move(f)), z0_(std::move(z0)) {
    w0_ = f_->eval(z0_, 0);
    // conservative ceiling for |f| on the circle, used to scale pole checks
    scale_ = cabs(w0_);
    if (const RationalPoly* p = f_->poly()) {
        Real r = cabs(z0_), s = 0, rk = 1;
        for (long i = 0; i <= p->degree(); ++i) {
            s += abs(to_real(p->coeff(i))) * rk;
            rk *= r;
        }
        scale_ = s;
    }
    if (scale_ == 0) throw PoleOnContour("ContourBranch: factor is zero on the whole circle");
    if (!(cabs(w0_) > scale_ * pow10(-14)))
        throw PoleOnContour("ContourBranch: factor vanishes at the expansion point: " +
                            f_->describe());
    int grid = 256;
    for (;;) {
        try {
            build(grid);
            return;
        } catch (const InternalInconsistency&) {
            if (grid >= (1 << 14)) throw PoleOnContour(
                "ContourBranch: argument varies too fast between anchors (zero on or near "
                "the contour): " + f_->describe());
            grid *= 2;
        }
    }
}

void ContourBranch::build(int grid) {
    fwd_.clear();
    bwd_.clear();
    step_ = theta_cap() / grid;
    Real tol = scale_ * pow10(-14);
    for (int dir = 0; dir < 2; ++dir) {
        auto& side = dir == 0 ? fwd_ : bwd_;
        Anchor prev{Real(0), w0_, carg(w0_)};
        side.push_back(prev);
        for (int k = 1; k <= grid; ++k) {
            Anchor a;
            a.theta = (dir == 0 ? step_ : -step_) * k;
            a.value = f_->eval(z0_ * polar(Real(1), a.theta), 0);
            if (cabs(a.value) < tol)
                throw PoleOnContour("ContourBranch: |f| vanishes on the contour: " +
                                    f_->describe());
            Real delta = carg(a.value * conj(prev.value));
            if (abs(delta) >= pi() / 2)
                throw InternalInconsistency("ContourBranch: anchor step too coarse");
            a.arg_cont = prev.arg_cont + delta;
            side.push_back(a);
            prev = a;
        }
    }
}

Cplx ContourBranch::at(const Real& theta) const { return f_->eval(z0_ * polar(Real(1), theta), 0); }

Cplx ContourBranch::log_ratio(const Real& theta) const {
    const auto& side = theta >= 0 ? fwd_ : bwd_;
    Real t = abs(theta);
    size_t idx = static_cast<size_t>(to_double(floor(t / step_)));
    if (idx >= side.size()) idx = side.size() - 1;
    const Anchor& anchor = side[idx];
    Cplx w = at(theta);
    Real delta = carg(w * conj(anchor.value));
    Real arg_cont = anchor.arg_cont + delta;
    const Anchor& origin = side[0];
    return {log(cabs(w)) - log(cabs(origin.value)), arg_cont - origin.arg_cont};
}

PhaseEvaluator::PhaseEvaluator(const FunctionSystem& system, const Direction& d, const Real& Z)
    : d_(d.d), Z_(Z) {
    if (static_cast<int>(d.d.size()) != system.m() + 1)
        throw ConstraintViolation("PhaseEvaluator: direction has wrong length");
    for (const auto& f : system.factors) branches_.emplace_back(f, Cplx{Z});
}

Cplx PhaseEvaluator::F(const Real& theta) const {
    Cplx s{Real(0), theta * d_[0]};  // i theta d0
    for (size_t j = 0; j < branches_.size(); ++j) s -= d_[j + 1] * branches_[j].log_ratio(theta);
    return s;
}

Cplx PhaseEvaluator::weighted_log(const std::vector<Real>& weights, const Real& theta) const {
    Cplx s;
    for (size_t j = 0; j < branches_.size(); ++j)
        if (weights[j] != 0) s += weights[j] * branches_[j].log_ratio(theta);
    return s;
}

Cplx eval_F(const FunctionSystem& system, const Direction& d, const CriticalPoint& z,
            const Real& theta) {
    return PhaseEvaluator(system, d, z.z).F(theta);
}

Cplx eval_H(const FunctionSystem& system, const Direction& d, const Real& theta, const Cplx& z) {
    if (static_cast<int>(d.d.size()) != system.m() + 1)
        throw ConstraintViolation("eval_H: direction has wrong length");
    Cplx s{Real(0), theta * d.d[0]};
    for (int j = 1; j <= system.m(); ++j) {
        if (d.d[static_cast<size_t>(j)] == 0) continue;
        ContourBranch branch(system.factors[static_cast<size_t>(j - 1)], z);
        s -= d.d[static_cast<size_t>(j)] * branch.log_ratio(theta);
    }
    return s;
}

namespace {

// G(theta; d) = dH/dz(theta, 0; d) - theta d2H/dzdtheta(0, 0; d)
//             = sum_j d_j rho_j (1 + i theta - e^{i theta}),  rho_j = f_j'(0)/f_j(0)
Cplx g_limit(const FunctionSystem& system, const Direction& d, const Real& theta) {
    Cplx S;
    for (int j = 1; j <= system.m(); ++j) {
        if (d.d[static_cast<size_t>(j)] == 0) continue;
        Cplx f0 = eval_f(system, j, Cplx{Real(0)}, 0);
        Cplx f1 = eval_f(system, j, Cplx{Real(0)}, 1);
        S += d.d[static_cast<size_t>(j)] * (f1 / f0);
    }
    Cplx e{Real(0), theta};  // i theta
    return S * (Cplx{Real(1)} + e - cexp(e));
}

}  // namespace

Cplx eval_G(const FunctionSystem& system, const Direction& d, const Real& theta) {
    CriticalPoint zc = solve_critical(system, d);
    if (zc.z <= pow10(-8)) return g_limit(system, d, theta);
    return PhaseEvaluator(system, d, zc.z).F(theta) / zc.z;
}

PhaseExpansion taylor_F_at(const FunctionSystem& system, const Direction& d,
                           const CriticalPoint& zc, int order) {
    if (order < 2) throw ConstraintViolation("taylor_F: order must be >= 2");
    const int K = order;
    const Real& Z = zc.z;

    // F series = i d0 theta - sum_j d_j log-series(f_j(Z e^{i theta})/f_j(Z))
    std::vector<Cplx> F(static_cast<size_t>(K) + 1);
    F[1] = Cplx{Real(0), d.d[0]};
    for (int j = 1; j <= system.m(); ++j) {
        const Real& dj = d.d[static_cast<size_t>(j)];
        if (dj == 0) continue;
        const RationalPoly* p = system.factors[static_cast<size_t>(j - 1)]->poly();
        if (p == nullptr)
            throw ConstraintViolation("taylor_F: series expansion needs polynomial factors");
        // u_k = (i^k / k!) sum_p c_p p^k Z^p  (coefficients of f_j(Z e^{i theta})
        // as a series in theta)
        std::vector<Cplx> u(static_cast<size_t>(K) + 1);
        Real kfact = 1;
        for (int k = 0; k <= K; ++k) {
            if (k > 0) kfact *= k;
            Real s = 0, zp = 1;
            for (long pdeg = 0; pdeg <= p->degree(); ++pdeg) {
                if (pdeg > 0 || k == 0) {
                    Real pk = 1;
                    for (int q = 0; q < k; ++q) pk *= pdeg;
                    s += to_real(p->coeff(pdeg)) * pk * zp;
                }
                zp *= Z;
            }
            Real mag = s / kfact;
            switch (k % 4) {  // i^k
                case 0: u[static_cast<size_t>(k)] = Cplx{mag}; break;
                case 1: u[static_cast<size_t>(k)] = Cplx{Real(0), mag}; break;
                case 2: u[static_cast<size_t>(k)] = Cplx{-mag}; break;
                case 3: u[static_cast<size_t>(k)] = Cplx{Real(0), -mag}; break;
            }
        }
        if (cabs(u[0]) == 0) throw PoleOnContour("taylor_F: f_j(Z) = 0");
        // normalize to v = u / u0, then l = log v via k v_k = sum i l_i v_{k-i}
        std::vector<Cplx> v(u.size());
        for (size_t k = 0; k < u.size(); ++k) v[k] = u[k] / u[0];
        std::vector<Cplx> l(v.size());
        for (int k = 1; k <= K; ++k) {
            Cplx acc = v[static_cast<size_t>(k)];
            for (int i = 1; i < k; ++i)
                acc -= (Real(i) / Real(k)) * (l[static_cast<size_t>(i)] *
                                              v[static_cast<size_t>(k - i)]);
            l[static_cast<size_t>(k)] = acc;
        }
        for (int k = 1; k <= K; ++k) F[static_cast<size_t>(k)] -= dj * l[static_cast<size_t>(k)];
    }

    // c0 is identically zero; c1 equals i times the critical-equation residual
    if (cabs(F[1]) > pow10(-8) + 100 * zc.residual)
        throw InternalInconsistency("taylor_F: c1 = " + real_str(cabs(F[1]), 8) +
                                    ", the supplied point is not critical");
    PhaseExpansion pe;
    pe.direction = d;
    pe.z_critical = zc;
    pe.order = K;
    for (int k = 2; k <= K; ++k) pe.coeffs.push_back(F[static_cast<size_t>(k)]);
    return pe;
}

PhaseExpansion taylor_F(const FunctionSystem& system, const Direction& d, int order) {
    return taylor_F_at(system, d, solve_critical(system, d), order);
}

Theorem2Report check_theorem2(const FunctionSystem& system, const Direction& d,
                              const std::vector<Real>& theta_grid) {
    Theorem2Report rep;
    CriticalPoint zc = solve_critical(system, d);
    bool on_boundary = zc.z <= pow10(-8);
    PhaseEvaluator phase(system, d, zc.z);

    // (a) F(0) = F'(0) = 0; the derivative via a central difference
    rep.f0_abs = cabs(phase.F(Real(0)));
    Real h = pow10(-7);
    rep.f0_prime_abs = cabs((phase.F(h) - phase.F(-h)) / (2 * h));
    rep.a_pass = rep.f0_abs < pow10(-12) && rep.f0_prime_abs < pow10(-12);

    // (b) Re F > 0 off theta = 0, unless d is in Z^{-1}{0}
    rep.b_vacuous = on_boundary;
    rep.b_pass = true;
    if (!on_boundary) {
        for (const Real& t : theta_grid) {
            if (abs(t) <= pow10(-15)) continue;
            if (phase.F(t).re <= 0) {
                rep.b_pass = false;
                rep.b_witness = t;
                break;
            }
        }
    }

    // (c) F = Z G on the grid (limit formula when Z ~ 0)
    rep.c_pass = true;
    for (const Real& t : theta_grid) {
        Cplx Fv = phase.F(t);
        Cplx Gv = on_boundary ? g_limit(system, d, t) : Fv / zc.z;
        if (cabs(Fv - zc.z * Gv) >= pow10(-10)) {
            rep.c_pass = false;
            rep.c_witness = t;
            break;
        }
    }
    return rep;
}

}  // namespace mixedpowers
