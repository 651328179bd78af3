#pragma once
#include <functional>

#include "mixedpowers/numeric.hpp"

namespace mixedpowers {

// Adaptive Gauss-Kronrod quadrature (G7/K15 pair) for smooth complex
// integrands on a real interval. Node/weight tables are stored as 50-digit
// decimal strings and instantiated at the working precision, so results are
// bit-stable for a fixed precision regardless of evaluation order.
//
// The error target is err <= tol * (|I| + width_scale); panels are refined
// worst-first and the final sum runs left to right for determinism.
struct QuadratureResult {
    Cplx value;
    Real error_estimate;
    int panels;
    long evaluations;
};

struct QuadratureOptions {
    Real tol = Real(1) / Real(1000000000000LL);  // 1e-12
    int initial_panels = 8;
    int max_panels = 1 << 16;
};

QuadratureResult integrate_adaptive(const std::function<Cplx(const Real&)>& f, const Real& a,
                                    const Real& b, const QuadratureOptions& opt = {});

// single-panel G7 and K15 values (exposed for the table self-tests)
void gk15_panel(const std::function<Cplx(const Real&)>& f, const Real& a, const Real& b,
                Cplx& gauss7, Cplx& kronrod15);

}  // namespace mixedpowers
