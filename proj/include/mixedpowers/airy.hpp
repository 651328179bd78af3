#pragma once
#include "mixedpowers/numeric.hpp"

namespace mixedpowers {

// Ai(x) and Ai'(x) on [-15, 20]: Maclaurin series for x <= 4.5, standard
// asymptotic expansion (truncated at its smallest term, inclusive) beyond.
// Absolute accuracy 1e-10 over the supported range; the density path needs
// arguments up to x^2 = 100 on the asymptotic branch.
Real airy_ai(const Real& x);
Real airy_ai_prime(const Real& x);

// map-Airy density 2 e^{-2x^3/3} (x Ai(x^2) - Ai'(x^2)) on [-10, 10];
// the exponential factors pass through e^{+-666} so everything stays in Real
Real map_airy_density(const Real& x);

}  // namespace mixedpowers
