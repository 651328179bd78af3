#pragma once
#include <stdexcept>
#include <string>

namespace mixedpowers {

// Error taxonomy. Exit-code mapping (see cli): validation errors -> 2,
// domain/convergence errors -> 3, coalescence -> 4.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// input fails a structural precondition (H1/H2, malformed vectors, bad flags)
struct ConstraintViolation : Error {
    using Error::Error;
};

// input is outside the mathematical domain of the requested operation
struct DomainError : Error {
    using Error::Error;
};

// f_j vanishes where it must not (log-derivative at a zero)
struct PoleError : Error {
    using Error::Error;
};

// some |f_j| vanishes on the integration contour
struct PoleOnContour : Error {
    using Error::Error;
};

// critical-point equation has no root in the search region
struct NoSolution : Error {
    using Error::Error;
};
struct NoCriticalPoint : Error {
    using Error::Error;
};

// iteration failed to converge (root finding)
struct NonConvergence : Error {
    using Error::Error;
};

// adaptive quadrature exceeded its panel budget
struct ConvergenceError : Error {
    using Error::Error;
};

// requested arc endpoint has Re F <= 0
struct BadEpsilon : Error {
    using Error::Error;
};
struct NoValidEpsilon : Error {
    using Error::Error;
};

// Gaussian leading term refused: saddle coalescing (c2 ~ 0) or cubic term
// dominating the quadratic one at the realized scale
struct CoalescenceError : Error {
    using Error::Error;
};

// small-exponent limit formula requested outside its regime
struct RegimeError : Error {
    using Error::Error;
};

// two supposedly-identical computations disagreed; always a bug
struct InternalInconsistency : Error {
    using Error::Error;
};

}  // namespace mixedpowers
