#pragma once
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mixedpowers/errors.hpp"
#include "mixedpowers/rational_poly.hpp"

namespace mixedpowers {

// A factor f_j. The shipped applications only ever use polynomials, but the
// evaluation side of the machinery (critical points, phase term, quadrature)
// only needs f, f', f'' plus an exact Taylor prefix for the oracle, so the
// interface keeps non-polynomial analytic factors possible.
class AnalyticFactor {
  public:
    virtual ~AnalyticFactor() = default;
    virtual Cplx eval(const Cplx& z, int derivative_order) const = 0;
    // exact coefficients of degrees 0..upto
    virtual RationalPoly taylor_prefix(long upto) const = 0;
    virtual bool is_constant() const = 0;
    virtual const RationalPoly* poly() const { return nullptr; }
    virtual std::string describe() const = 0;
};

class PolynomialFactor final : public AnalyticFactor {
  public:
    explicit PolynomialFactor(RationalPoly p) : p_(std::move(p)) {}
    Cplx eval(const Cplx& z, int derivative_order) const override {
        return p_.eval(z, derivative_order);
    }
    RationalPoly taylor_prefix(long) const override { return p_; }
    bool is_constant() const override { return p_.degree() < 1; }
    const RationalPoly* poly() const override { return &p_; }
    std::string describe() const override;

  private:
    RationalPoly p_;
};

using FactorPtr = std::shared_ptr<const AnalyticFactor>;

// Validated tuple (f_1..f_m) with optional amplitude f_0 and analyticity
// radius (infinite for polynomials).
struct FunctionSystem {
    std::vector<FactorPtr> factors;
    FactorPtr amplitude;  // may be null
    Real radius = real_infinity();

    int m() const { return static_cast<int>(factors.size()); }
};

FunctionSystem make_system(std::vector<RationalPoly> polys,
                           std::optional<RationalPoly> amplitude = std::nullopt);

// checks H1 (f_j(0) != 0) and H2 (f_j non-constant); throws ConstraintViolation
// naming the offending factor
const FunctionSystem& validate(const FunctionSystem& system);

// value of f_j, f_j' or f_j'' at z; j is 1-based as in the product notation
Cplx eval_f(const FunctionSystem& system, int j, const Cplx& z, int derivative_order = 0);

// z f_j'(z) / f_j(z); throws PoleError when f_j(z) ~ 0
Cplx log_derivative(const FunctionSystem& system, int j, const Cplx& z);

// ---------------------------------------------------------------------------
// Norms, directions, exponent vectors

enum class NormKind { weighted_l1, l_infinity };

struct NormSpec {
    NormKind kind = NormKind::weighted_l1;
    std::vector<Rational> weights;  // size m+1, used by weighted_l1 only

    static NormSpec wl1(std::vector<Rational> w);
    static NormSpec linf();

    Real norm(const std::vector<Real>& v) const;
    Rational norm_exact(const std::vector<Rational>& v) const;
};

// point of the unit sphere S_+^m: nonnegative, ||d|| = 1 (tolerance 1e-12)
struct Direction {
    std::vector<Real> d;  // size m+1; d[0] is the target-degree coordinate
    NormSpec norm;
};

Direction make_direction(std::vector<Real> d, NormSpec norm);

// n = (n0, n1..nm), all >= 0, ||n|| > 0
struct ExponentVector {
    std::vector<long> n;

    long n0() const { return n.at(0); }
    int m() const { return static_cast<int>(n.size()) - 1; }
};

Rational norm_of(const ExponentVector& n, const NormSpec& norm);
Direction direction_of(const ExponentVector& n, const NormSpec& norm);

// Remark-1 reduction: strip z^{k_j} from factors vanishing at 0 and shift n0
// by sum k_j n_j. If the shifted n0 is negative the coefficient is exactly 0.
struct ReduceResult {
    FunctionSystem system;
    ExponentVector n;
    bool coefficient_is_zero;
};
ReduceResult reduce_vanishing(const FunctionSystem& system, const ExponentVector& n);

// exact-oracle view of the system: factor polynomials (amplitude included as
// exponent-1 factor when present), suitable for coeff_of_product
std::vector<std::pair<RationalPoly, unsigned long>> oracle_factors(const FunctionSystem& system,
                                                                   const ExponentVector& n,
                                                                   long taylor_upto);

}  // namespace mixedpowers
