#include "mixedpowers/function_system.hpp"

#include <sstream>

#include "mixedpowers/errors.hpp"

namespace mixedpowers {

std::string PolynomialFactor::describe() const {
    std::ostringstream os;
    bool first = true;
    if (p_.is_zero()) return "0";
    for (long i = 0; i <= p_.degree(); ++i) {
        Rational q = p_.coeff(i);
        if (q == 0) continue;
        if (!first) os << (q > 0 ? " + " : " - ");
        if (first && q < 0) os << "-";
        Rational a = q > 0 ? q : Rational(-q);
        if (a != 1 || i == 0) os << a.str();
        if (i == 1) os << "z";
        if (i > 1) os << "z^" << i;
        first = false;
    }
    return os.str();
}

FunctionSystem make_system(std::vector<RationalPoly> polys,
                           std::optional<RationalPoly> amplitude) {
    FunctionSystem s;
    for (auto& p : polys) s.factors.push_back(std::make_shared<PolynomialFactor>(std::move(p)));
    if (amplitude) s.amplitude = std::make_shared<PolynomialFactor>(std::move(*amplitude));
    return s;
}

const FunctionSystem& validate(const FunctionSystem& system) {
    if (system.factors.empty())
        throw ConstraintViolation("validate: system needs at least one factor");
    for (int j = 1; j <= system.m(); ++j) {
        const auto& f = system.factors[static_cast<size_t>(j - 1)];
        Cplx at0 = f->eval(Cplx(Real(0)), 0);
        if (cabs(at0) <= Real(1) / Real(1000000000000LL))
            throw ConstraintViolation("validate: factor " + std::to_string(j) +
                                      " violates H1 (f(0) = 0): " + f->describe());
        if (f->is_constant())
            throw ConstraintViolation("validate: factor " + std::to_string(j) +
                                      " violates H2 (constant): " + f->describe());
    }
    return system;
}

Cplx eval_f(const FunctionSystem& system, int j, const Cplx& z, int derivative_order) {
    if (j < 1 || j > system.m())
        throw ConstraintViolation("eval_f: factor index out of range");
    if (!is_inf(system.radius) && cabs(z) >= system.radius)
        throw DomainError("eval_f: |z| outside the radius of analyticity");
    return system.factors[static_cast<size_t>(j - 1)]->eval(z, derivative_order);
}

Cplx log_derivative(const FunctionSystem& system, int j, const Cplx& z) {
    Cplx f = eval_f(system, j, z, 0);
    if (cabs(f) < Real(1) / Real(10000000000000LL) / Real(10))  // 1e-14
        throw PoleError("log_derivative: factor " + std::to_string(j) + " vanishes at z");
    return z * eval_f(system, j, z, 1) / f;
}

NormSpec NormSpec::wl1(std::vector<Rational> w) {
    for (const auto& x : w)
        if (x <= 0) throw ConstraintViolation("NormSpec: weights must be positive");
    return NormSpec{NormKind::weighted_l1, std::move(w)};
}

NormSpec NormSpec::linf() { return NormSpec{NormKind::l_infinity, {}}; }

Real NormSpec::norm(const std::vector<Real>& v) const {
    using bmp::abs;
    if (kind == NormKind::l_infinity) {
        Real best = 0;
        for (const auto& x : v)
            if (abs(x) > best) best = abs(x);
        return best;
    }
    if (weights.size() != v.size())
        throw ConstraintViolation("NormSpec: weight count does not match vector size");
    Real s = 0;
    for (size_t i = 0; i < v.size(); ++i) s += to_real(weights[i]) * abs(v[i]);
    return s;
}

Rational NormSpec::norm_exact(const std::vector<Rational>& v) const {
    using bmp::abs;
    if (kind == NormKind::l_infinity) {
        Rational best = 0;
        for (const auto& x : v)
            if (abs(x) > best) best = abs(x);
        return best;
    }
    if (weights.size() != v.size())
        throw ConstraintViolation("NormSpec: weight count does not match vector size");
    Rational s = 0;
    for (size_t i = 0; i < v.size(); ++i) s += weights[i] * abs(v[i]);
    return s;
}

Direction make_direction(std::vector<Real> d, NormSpec norm) {
    using bmp::abs;
    for (const auto& x : d)
        if (x < 0) throw ConstraintViolation("make_direction: coordinates must be nonnegative");
    Real n = norm.norm(d);
    Real tol = Real(1) / Real(1000000000000LL);
    if (abs(n - 1) > tol)
        throw ConstraintViolation("make_direction: ||d|| = " + real_str(n, 20) + ", expected 1");
    return Direction{std::move(d), std::move(norm)};
}

Rational norm_of(const ExponentVector& n, const NormSpec& norm) {
    std::vector<Rational> v(n.n.size());
    for (size_t i = 0; i < n.n.size(); ++i) v[i] = n.n[i];
    return norm.norm_exact(v);
}

Direction direction_of(const ExponentVector& n, const NormSpec& norm) {
    for (long x : n.n)
        if (x < 0) throw ConstraintViolation("direction_of: exponents must be nonnegative");
    Rational nn = norm_of(n, norm);
    if (nn == 0) throw ConstraintViolation("direction_of: ||n|| must be positive");
    std::vector<Real> d(n.n.size());
    for (size_t i = 0; i < n.n.size(); ++i) d[i] = to_real(Rational(n.n[i]) / nn);
    return Direction{std::move(d), norm};
}

ReduceResult reduce_vanishing(const FunctionSystem& system, const ExponentVector& n) {
    if (static_cast<int>(n.n.size()) != system.m() + 1)
        throw ConstraintViolation("reduce_vanishing: exponent vector has wrong length");
    ReduceResult out{FunctionSystem{}, n, false};
    out.system.radius = system.radius;
    out.system.amplitude = system.amplitude;
    long shift = 0;
    for (int j = 1; j <= system.m(); ++j) {
        const auto& f = system.factors[static_cast<size_t>(j - 1)];
        const RationalPoly* p = f->poly();
        if (p == nullptr) {
            // non-polynomial descriptors must already satisfy H1
            out.system.factors.push_back(f);
            continue;
        }
        long k = p->vanishing_order();
        if (k == 0) {
            out.system.factors.push_back(f);
            continue;
        }
        shift += k * n.n[static_cast<size_t>(j)];
        out.system.factors.push_back(std::make_shared<PolynomialFactor>(p->shift_down(k)));
    }
    out.n.n[0] = n.n[0] - shift;
    out.coefficient_is_zero = out.n.n[0] < 0;
    return out;
}

std::vector<std::pair<RationalPoly, unsigned long>> oracle_factors(const FunctionSystem& system,
                                                                   const ExponentVector& n,
                                                                   long taylor_upto) {
    if (static_cast<int>(n.n.size()) != system.m() + 1)
        throw ConstraintViolation("oracle_factors: exponent vector has wrong length");
    std::vector<std::pair<RationalPoly, unsigned long>> out;
    for (int j = 1; j <= system.m(); ++j) {
        long e = n.n[static_cast<size_t>(j)];
        if (e < 0) throw ConstraintViolation("oracle_factors: negative exponent");
        out.emplace_back(system.factors[static_cast<size_t>(j - 1)]->taylor_prefix(taylor_upto),
                         static_cast<unsigned long>(e));
    }
    if (system.amplitude) out.emplace_back(system.amplitude->taylor_prefix(taylor_upto), 1UL);
    return out;
}

}  // namespace mixedpowers
