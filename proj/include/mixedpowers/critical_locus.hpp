#pragma once
#include <optional>
#include <utility>

#include "mixedpowers/function_system.hpp"

namespace mixedpowers {

// A (real, nonnegative) critical point for a direction, with the residual of
// the defining equation and a numeric strict-minimality certificate.
// minimality_margin is min over sampled theta != 0 of
//   prod |f_j(z)|^{d_j} - prod |f_j(z e^{i theta})|^{d_j}
// (after local refinement of the best competitor); +inf for the degenerate
// z = 0 point where the circle collapses.
struct CriticalPoint {
    Real z;
    Real residual;
    Real minimality_margin;
    bool strictly_minimal;
};

// Solve d0 = sum_j d_j z f_j'(z)/f_j(z) for real z >= 0.
// For systems with nonnegative coefficients the right side is increasing on
// [0, r), so a sign-change scan plus safeguarded Newton is exact enough; for
// mixed-sign systems the search is restricted to the component of {all
// f_j > 0} containing 0 unless an explicit bracket is supplied.
CriticalPoint solve_critical(const FunctionSystem& system, const Direction& d,
                             std::optional<std::pair<Real, Real>> bracket = std::nullopt);

// closed-form Z(d) for the system (1+z, 1+2z) under the weighted-L1 norm
// (1,1,2); requires d1 + d2 > d0
CriticalPoint z_formula_trivariate(const Direction& d);

// closed-form Z(d) for the system (1+z, 1-z) under L-infinity with d1 = 1;
// requires (d1-d2)^2 >= 4 d0 (d1+d2-d0) and d not in {(0,1,1),(1,1,0)}
CriticalPoint z_formula_planar(const Direction& d);

// sampling + local-refinement certificate; fast aperiodicity pre-check for
// nonnegative polynomial factors short-circuits the verdict (the sampled
// margin is still reported)
std::pair<Real, bool> verify_strict_minimality(const FunctionSystem& system, const Direction& d,
                                               const Real& z, int samples = 720);

// the d(z) construction: direction whose critical point is z, given the tail
// (d_1..d_m) up to scaling
Direction direction_of_z(const FunctionSystem& system, const Real& z,
                         const std::vector<Real>& tail, const NormSpec& norm);

// residual |d0 - sum d_j z f_j'/f_j| at z
Real critical_residual(const FunctionSystem& system, const Direction& d, const Real& z);

}  // namespace mixedpowers
