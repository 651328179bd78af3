#pragma once
#include <initializer_list>
#include <vector>

#include "mixedpowers/io.hpp"

namespace mptest {

using namespace mixedpowers;

inline RationalPoly P(std::initializer_list<long> cs) {
    std::vector<Rational> v;
    for (long c : cs) v.emplace_back(c);
    return RationalPoly(std::move(v));
}

inline bool near(const Real& a, const Real& b, const Real& tol) {
    return bmp::abs(a - b) <= tol;
}

inline bool near(const Cplx& a, const Cplx& b, const Real& tol) {
    return cabs(a - b) <= tol;
}

// signed relative error of an estimate against the exact coefficient
inline Real rel_of(const BigCoefficient& exact, const AsymptoticEstimate& est) {
    return Real(est.sign * exact.sign) * bmp::exp(est.log_abs - exact.log_abs) - 1;
}

}  // namespace mptest
