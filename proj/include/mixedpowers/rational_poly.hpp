#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "mixedpowers/numeric.hpp"

namespace mixedpowers {

// Dense univariate polynomial with exact rational coefficients.
// coeffs[i] is the coefficient of z^i. Canonical zero = empty vector;
// otherwise the trailing coefficient is nonzero.
class RationalPoly {
  public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static RationalPoly constant(const Rational& a);

    // degree of the zero polynomial is -1
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(long i) const;

    // all coefficients have denominator 1
    bool is_integral() const;
    // all coefficients >= 0
    bool is_nonnegative() const;

    RationalPoly derivative() const;
    Rational eval_rational(const Rational& x) const;
    // Horner evaluation of the poly or its first/second derivative
    Cplx eval(const Cplx& z, int derivative_order = 0) const;
    Real eval_real(const Real& x, int derivative_order = 0) const;

    // order of vanishing at z=0 (0 for zero polynomial by convention)
    long vanishing_order() const;
    // divide by z^k exactly; requires the low k coefficients to vanish
    RationalPoly shift_down(long k) const;

    bool operator==(const RationalPoly& o) const { return c_ == o.c_; }

  private:
    void trim();
    std::vector<Rational> c_;
};

// product, optionally truncated to degree <= truncate_at
RationalPoly poly_mul(const RationalPoly& a, const RationalPoly& b,
                      std::optional<long> truncate_at = std::nullopt);
// f^e mod z^{truncate_at+1} by binary exponentiation
RationalPoly poly_pow(const RationalPoly& f, unsigned long e, long truncate_at);

// Exact coefficient value together with its sign and log-magnitude; the
// log-space view is what estimates are compared against (the value itself
// overflows any fixed-width float long before ||n|| gets interesting).
struct BigCoefficient {
    Rational value;
    int sign;      // -1, 0, +1
    Real log_abs;  // ln|value|; -inf when value = 0

    static BigCoefficient of(Rational v);
};

// the exact oracle: [z^{n0}] prod_j f_j^{e_j}
BigCoefficient coeff_of_product(long n0,
                                const std::vector<std::pair<RationalPoly, unsigned long>>& factors);

// binomial(k, t), zero when t < 0 or t > k
BigCoefficient binomial(unsigned long k, long t);

BigInt factorial(unsigned long n);

}  // namespace mixedpowers
