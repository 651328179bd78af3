#pragma once
#include <optional>
#include <vector>

#include "mixedpowers/critical_locus.hpp"

namespace mixedpowers {

// Continuous-branch evaluation of ln(f(z0 e^{i theta}) / f(z0)) along the
// circle through z0. The principal branch can jump when f crosses the
// negative real axis; the phase term needs the branch that vanishes at
// theta = 0 and is continuous in theta, so we track the argument outward
// from 0 on an anchor grid and correct the principal value near each anchor.
class ContourBranch {
  public:
    ContourBranch(FactorPtr f, Cplx z0);

    // continuous log-ratio at theta in [-pi, pi]
    Cplx log_ratio(const Real& theta) const;
    const Cplx& base_value() const { return w0_; }

  private:
    struct Anchor {
        Real theta;
        Cplx value;
        Real arg_cont;  // continuous argument (arg w(0) at index 0)
    };
    void build(int grid);
    Cplx at(const Real& theta) const;

    FactorPtr f_;
    Cplx z0_;
    Cplx w0_;
    Real scale_;  // conservative |f| ceiling on the circle, for pole checks
    std::vector<Anchor> fwd_, bwd_;  // theta >= 0 / theta <= 0, outward order
    Real step_;
};

// Evaluator for the phase term
//   F(theta; d) = i theta d0 - sum_j d_j ln(f_j(Z e^{i theta})/f_j(Z))
// at a fixed direction and critical radius. Construction builds the branch
// tables once; evaluation is then cheap enough for quadrature kernels.
class PhaseEvaluator {
  public:
    PhaseEvaluator(const FunctionSystem& system, const Direction& d, const Real& Z);

    Cplx F(const Real& theta) const;
    // contribution sum_j n_j log-ratio_j (exact exponents, no normalization)
    Cplx weighted_log(const std::vector<Real>& weights, const Real& theta) const;
    const Real& Z() const { return Z_; }

  private:
    std::vector<ContourBranch> branches_;
    std::vector<Real> d_;
    Real Z_;
};

// one-shot wrappers matching the operation contracts
Cplx eval_F(const FunctionSystem& system, const Direction& d, const CriticalPoint& z,
            const Real& theta);
// H(theta, z; d) with the same continuous-branch convention, z any complex
// point with f_j(z) != 0
Cplx eval_H(const FunctionSystem& system, const Direction& d, const Real& theta, const Cplx& z);
// G = F/Z away from Z ~ 0; the analytic limit formula
//   G(theta; d) = dH/dz(theta, 0; d) - theta d2H/dz dtheta(0, 0; d)
// when Z <= 1e-8 (exact at Z = 0)
Cplx eval_G(const FunctionSystem& system, const Direction& d, const Real& theta);

// Taylor coefficients of F at theta = 0.
// c0 = c1 = 0 by construction (the c1 residual is checked first).
struct PhaseExpansion {
    Direction direction;
    CriticalPoint z_critical;
    std::vector<Cplx> coeffs;  // coeffs[i] = c_{i+2}
    int order;                 // K: highest coefficient index present

    const Cplx& c(int k) const { return coeffs.at(static_cast<size_t>(k - 2)); }
};

PhaseExpansion taylor_F(const FunctionSystem& system, const Direction& d, int order);
// same, reusing an already-solved critical point
PhaseExpansion taylor_F_at(const FunctionSystem& system, const Direction& d,
                           const CriticalPoint& zc, int order);

// Theorem-2 property report: (a) F(0) = F'(0) = 0; (b) Re F > 0 off 0 when
// Z > 0; (c) F = Z G on the grid. Witness thetas identify the first failure.
struct Theorem2Report {
    bool a_pass = false;
    bool b_pass = false;
    bool b_vacuous = false;  // d in Z^{-1}{0}: (b) asserts nothing
    bool c_pass = false;
    std::optional<Real> b_witness;
    std::optional<Real> c_witness;
    Real f0_abs;       // |F(0)|
    Real f0_prime_abs; // |F'(0)| (central difference)

    bool all_pass() const { return a_pass && (b_pass || b_vacuous) && c_pass; }
};

Theorem2Report check_theorem2(const FunctionSystem& system, const Direction& d,
                              const std::vector<Real>& theta_grid);

}  // namespace mixedpowers
