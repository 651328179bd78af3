#pragma once
#include <optional>

#include "mixedpowers/phase_term.hpp"
#include "mixedpowers/quadrature.hpp"

namespace mixedpowers {

enum class Regime { large_exponent, small_exponent };
// quadrature / gaussian are the two estimate methods proper; small_limit is
// the Poisson-type boundary formula and exact marks degenerate short-circuits
// (Z = 0) where the "estimate" is the exact value
enum class Method { quadrature, gaussian, small_limit, exact };

struct Diagnostics {
    Real nz_product;  // ||n|| * Z, the phase-transition indicator
    Real c2;          // (1/2) F''(0; d)
    std::optional<Real> epsilon;     // large-exponent arc half-width
    std::optional<Real> tail_bound;  // omitted part relative to retained part
};

struct AsymptoticEstimate {
    int sign;      // of the estimated coefficient
    Real log_abs;  // ln|estimate|
    Regime regime;
    Method method;
    Diagnostics diagnostics;
};

// Full-circle representation (an exact identity, not an expansion):
//   [z^{n0}] prod f_j^{n_j} =
//     (Z^{-n0} prod f_j(Z)^{n_j} / 2pi) * Int_{-pi}^{pi} e^{-||n|| F} A dtheta
// A = amplitude factor at Z e^{i theta} when the system has one. Z = 0
// short-circuits to the exact constant-term product.
AsymptoticEstimate integral_small(const FunctionSystem& system, const ExponentVector& n,
                                  const NormSpec& norm);

// Truncated-arc representation over [-eps, eps]; diagnostics.tail_bound is a
// coarse-quadrature estimate of |omitted arc| / |retained arc| (the paper's
// exponentially small remainder has a non-constructive constant, so this is
// an empirical diagnostic, never a certified bound).
AsymptoticEstimate integral_large(const FunctionSystem& system, const ExponentVector& n,
                                  const NormSpec& norm, const Real& epsilon);

// Leading-order Gaussian estimate
//   prefactor * A(0; d) * (2pi)^{-1} * sqrt(pi / (||n|| c2)).
// Refused (CoalescenceError) when c2 <= 1e-6 or when the cubic phase term
// dominates the quadratic one at the realized scale (|c3| > c2^{3/2}
// sqrt(||n||)), which is the regime where the leading term is meaningless
// even though c2 is not yet tiny. diagnostics.tail_bound carries the
// magnitude of the next-order correction (the omitted part of the expansion).
AsymptoticEstimate gaussian_leading(const FunctionSystem& system, const ExponentVector& n,
                                    const NormSpec& norm);

// largest eps in {pi/2^k : k = 1..8} with Re F nondecreasing on a 64-point
// grid of [0, eps] and Re F(eps) > 0
Real choose_epsilon(const FunctionSystem& system, const Direction& d);

// Poisson-type boundary estimate mu^{n0}/n0! with mu = sum n_j f_j'(0)/f_j(0)
// (the Z -> 0 limit of the prefactor * limit-kernel product; for the
// trivariate system this is Corollary 2's k^t/t!).
AsymptoticEstimate small_exponent_limit(const FunctionSystem& system, const ExponentVector& n,
                                        const NormSpec& norm);

// regime heuristic: nz <= 32 -> small_exponent_limit; otherwise gaussian when
// it does not refuse; quadrature as the always-valid fallback
AsymptoticEstimate estimate_auto(const FunctionSystem& system, const ExponentVector& n,
                                 const NormSpec& norm);

// shared plumbing ---------------------------------------------------------

// sign and log-magnitude of Z^{-n0} prod f_j(Z)^{n_j} (amplitude excluded)
struct Prefactor {
    int sign;
    Real log_abs;
};
Prefactor prefactor_at(const FunctionSystem& system, const ExponentVector& n, const Real& Z);

// contour integral of e^{-||n|| F} A over [lo, hi] given a prepared evaluator
QuadratureResult phase_integral(const PhaseEvaluator& phase, const FunctionSystem& system,
                                const ExponentVector& n, const Real& norm_n, const Real& lo,
                                const Real& hi, const Real& tol);

}  // namespace mixedpowers
