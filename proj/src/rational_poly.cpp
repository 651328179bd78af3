#include "mixedpowers/rational_poly.hpp"

#include "mixedpowers/errors.hpp"

namespace mixedpowers {

RationalPoly RationalPoly::constant(const Rational& a) {
    if (a == 0) return RationalPoly{};
    return RationalPoly{std::vector<Rational>{a}};
}

void RationalPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational RationalPoly::coeff(long i) const {
    if (i < 0 || i >= static_cast<long>(c_.size())) return Rational(0);
    return c_[static_cast<size_t>(i)];
}

bool RationalPoly::is_integral() const {
    for (const auto& q : c_)
        if (denominator(q) != 1) return false;
    return true;
}

bool RationalPoly::is_nonnegative() const {
    for (const auto& q : c_)
        if (q < 0) return false;
    return true;
}

RationalPoly RationalPoly::derivative() const {
    if (c_.size() <= 1) return RationalPoly{};
    std::vector<Rational> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return RationalPoly{std::move(d)};
}

Rational RationalPoly::eval_rational(const Rational& x) const {
    Rational v = 0;
    for (size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
    return v;
}

Cplx RationalPoly::eval(const Cplx& z, int derivative_order) const {
    const RationalPoly* p = this;
    RationalPoly d1, d2;
    if (derivative_order >= 1) {
        d1 = derivative();
        p = &d1;
    }
    if (derivative_order >= 2) {
        d2 = d1.derivative();
        p = &d2;
    }
    if (derivative_order > 2 || derivative_order < 0)
        throw ConstraintViolation("RationalPoly::eval: derivative order must be 0, 1 or 2");
    Cplx v;
    for (size_t i = p->c_.size(); i-- > 0;) v = v * z + Cplx(to_real(p->c_[i]));
    return v;
}

Real RationalPoly::eval_real(const Real& x, int derivative_order) const {
    return eval(Cplx(x), derivative_order).re;
}

long RationalPoly::vanishing_order() const {
    if (c_.empty()) return 0;
    long k = 0;
    while (c_[static_cast<size_t>(k)] == 0) ++k;
    return k;
}

RationalPoly RationalPoly::shift_down(long k) const {
    if (k == 0) return *this;
    if (vanishing_order() < k)
        throw ConstraintViolation("RationalPoly::shift_down: low-order coefficients are nonzero");
    std::vector<Rational> d(c_.begin() + k, c_.end());
    return RationalPoly{std::move(d)};
}

namespace {

// schoolbook convolution on a generic coefficient ring; Coeff is Rational or
// BigInt (the latter when every input is integral, which is the common case
// and much faster at big operand sizes)
template <typename Coeff>
std::vector<Coeff> convolve(const std::vector<Coeff>& a, const std::vector<Coeff>& b, long cap) {
    if (a.empty() || b.empty()) return {};
    long deg = static_cast<long>(a.size() + b.size()) - 2;
    if (cap >= 0 && cap < deg) deg = cap;
    std::vector<Coeff> out(static_cast<size_t>(deg) + 1, Coeff(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (static_cast<long>(i) > deg) break;
        if (a[i] == 0) continue;
        size_t jmax = std::min(b.size(), static_cast<size_t>(deg) + 1 - i);
        for (size_t j = 0; j < jmax; ++j) out[i + j] += a[i] * b[j];
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

template <typename Coeff>
std::vector<Coeff> pow_truncated(std::vector<Coeff> base, unsigned long e, long cap) {
    std::vector<Coeff> acc{Coeff(1)};
    while (e > 0) {
        if (e & 1UL) acc = convolve(acc, base, cap);
        e >>= 1UL;
        if (e > 0) base = convolve(base, base, cap);
    }
    return acc;
}

std::vector<BigInt> to_bigint(const std::vector<Rational>& c) {
    std::vector<BigInt> out(c.size());
    for (size_t i = 0; i < c.size(); ++i) out[i] = numerator(c[i]);
    return out;
}

std::vector<Rational> to_rational(const std::vector<BigInt>& c) {
    std::vector<Rational> out(c.size());
    for (size_t i = 0; i < c.size(); ++i) out[i] = Rational(c[i]);
    return out;
}

}  // namespace

RationalPoly poly_mul(const RationalPoly& a, const RationalPoly& b,
                      std::optional<long> truncate_at) {
    long cap = truncate_at ? *truncate_at : -1;
    if (truncate_at && cap < 0) return RationalPoly{};
    if (a.is_integral() && b.is_integral())
        return RationalPoly{
            to_rational(convolve(to_bigint(a.coeffs()), to_bigint(b.coeffs()), cap))};
    return RationalPoly{convolve(a.coeffs(), b.coeffs(), cap)};
}

RationalPoly poly_pow(const RationalPoly& f, unsigned long e, long truncate_at) {
    if (truncate_at < 0) return RationalPoly{};
    if (e == 0) return RationalPoly::constant(1);
    if (f.is_zero()) return RationalPoly{};
    if (f.is_integral())
        return RationalPoly{to_rational(pow_truncated(to_bigint(f.coeffs()), e, truncate_at))};
    return RationalPoly{pow_truncated(f.coeffs(), e, truncate_at)};
}

BigCoefficient BigCoefficient::of(Rational v) {
    BigCoefficient out;
    out.sign = v == 0 ? 0 : (v > 0 ? 1 : -1);
    out.log_abs = log_abs_rational(v);
    out.value = std::move(v);
    return out;
}

BigCoefficient coeff_of_product(
    long n0, const std::vector<std::pair<RationalPoly, unsigned long>>& factors) {
    if (n0 < 0) return BigCoefficient::of(Rational(0));
    bool integral = true;
    for (const auto& [f, e] : factors) integral = integral && f.is_integral();

    if (integral) {
        std::vector<BigInt> acc{BigInt(1)};
        for (const auto& [f, e] : factors)
            acc = convolve(acc, pow_truncated(to_bigint(f.coeffs()), e, n0), n0);
        Rational v = static_cast<long>(acc.size()) > n0 ? Rational(acc[static_cast<size_t>(n0)])
                                                        : Rational(0);
        return BigCoefficient::of(std::move(v));
    }
    RationalPoly acc = RationalPoly::constant(1);
    for (const auto& [f, e] : factors) acc = poly_mul(acc, poly_pow(f, e, n0), n0);
    return BigCoefficient::of(acc.coeff(n0));
}

BigCoefficient binomial(unsigned long k, long t) {
    if (t < 0 || t > static_cast<long>(k)) return BigCoefficient::of(Rational(0));
    // multiplicative form with the smaller of t, k-t
    unsigned long tt = static_cast<unsigned long>(t);
    if (tt > k - tt) tt = k - tt;
    BigInt num = 1, den = 1;
    for (unsigned long i = 1; i <= tt; ++i) {
        num *= BigInt(k - tt + i);
        den *= BigInt(i);
    }
    return BigCoefficient::of(Rational(num) / Rational(den));
}

BigInt factorial(unsigned long n) {
    BigInt f = 1;
    for (unsigned long i = 2; i <= n; ++i) f *= BigInt(i);
    return f;
}

}  // namespace mixedpowers
