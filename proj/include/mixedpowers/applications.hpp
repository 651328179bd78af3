#pragma once
#include <string>

#include "mixedpowers/airy.hpp"
#include "mixedpowers/saddle_engine.hpp"

namespace mixedpowers {

// ---------------------------------------------------------------------------
// Trivariate pipeline: c(n,k,t) = [x^n y^k z^t] C(x,y,z)
//                              = sum_i (-1)^i C(n,i) C(k-2i, t-2i)
//                              = [z^t] (1+z)^{k-2n} (1+2z)^n
// under the weighted-L1 norm (1,1,2) (fixed for this application).

struct TrivariateQuery {
    long n, k, t;  // requires n,k,t >= 0 and 2n <= k
};

// both formulas, compared exactly (InternalInconsistency on mismatch)
BigCoefficient trivariate_exact(const TrivariateQuery& q);

enum class EstimateMethod { auto_select, gaussian, quadrature, small_limit };

AsymptoticEstimate trivariate_estimate(const TrivariateQuery& q,
                                       EstimateMethod method = EstimateMethod::auto_select);

// the trivariate system (1+z, 1+2z) and its norm, for direct engine access
FunctionSystem trivariate_system();
NormSpec trivariate_norm();
ExponentVector trivariate_exponents(const TrivariateQuery& q);

// ---------------------------------------------------------------------------
// Planar-map core pipeline: T(n,k) = [z^{n-1}] phi^n psi^{k-1} psi' with
// phi = (1+z)^3, psi = z(1-z), reduced to
//   [z^{n0}] (1+z)^{n1} (1-z)^{n2} - 2 [z^{n0-1}] (1+z)^{n1} (1-z)^{n2},
// n0 = n-k, n1 = 3n, n2 = k-1, under the L-infinity norm.

struct PlanarCoreQuery {
    long n, k;  // requires 1 <= k <= n
};

// two-term decomposition AND direct expansion of phi^n psi^{k-1} psi',
// compared exactly
BigCoefficient planar_core_exact(const PlanarCoreQuery& q);

// quadrature: both decomposition terms integrated on the common contour
// |z| = Z of the first term's direction (the identity holds on any radius).
// gaussian: per-term Gaussian leading values at each term's own critical
// radius, combined with the same 1, -2 weights; refuses in the coalescing
// window like the engine does.
AsymptoticEstimate planar_core_estimate(const PlanarCoreQuery& q,
                                        EstimateMethod method = EstimateMethod::auto_select);

FunctionSystem planar_system();
NormSpec planar_norm();

struct CoalescenceDiagnostic {
    Real c2;            // (1/2) F''(0) at the window direction (n-k, 3n, k)/(3n)
    Real window_coord;  // (k - n/3) / n^{2/3}
};
CoalescenceDiagnostic coalescence_diagnostic(const PlanarCoreQuery& q);

// ---------------------------------------------------------------------------
// Optional local-limit assembly p_{n,k} = (k C_k)/(n M_n) * T(n,k) with
// user-supplied integer sequences (the enumeration constants are inputs, not
// derived here).

struct IntegerSequence {
    long offset = 0;
    std::vector<BigInt> values;

    bool has(long index) const;
    const BigInt& at(long index) const;
};

IntegerSequence load_sequence(const std::string& path);
Rational planar_core_probability(const PlanarCoreQuery& q, const IntegerSequence& M,
                                 const IntegerSequence& C);

}  // namespace mixedpowers
