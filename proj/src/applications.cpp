#include "mixedpowers/applications.hpp"

#include <fstream>
#include <sstream>

#include "mixedpowers/errors.hpp"

namespace mixedpowers {

using bmp::abs;
using bmp::exp;
using bmp::log;
using bmp::pow;

namespace {

Real pow10(int e) {
    Real r = 1;
    for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= 10;
    return e < 0 ? Real(1) / r : r;
}

void check_trivariate(const TrivariateQuery& q) {
    if (q.n < 0 || q.k < 0 || q.t < 0)
        throw ConstraintViolation("trivariate: n, k, t must be nonnegative");
    if (2 * q.n > q.k) throw ConstraintViolation("trivariate: requires 2n <= k");
}

void check_planar(const PlanarCoreQuery& q) {
    if (q.k < 1 || q.k > q.n) throw ConstraintViolation("planar-core: requires 1 <= k <= n");
}

RationalPoly one_plus_z() { return RationalPoly({Rational(1), Rational(1)}); }
RationalPoly one_plus_2z() { return RationalPoly({Rational(1), Rational(2)}); }
RationalPoly one_minus_z() { return RationalPoly({Rational(1), Rational(-1)}); }
RationalPoly one_minus_2z() { return RationalPoly({Rational(1), Rational(-2)}); }

// integral representation with the method labels of the interior regime when
// ||n|| Z is large; the always-valid full-circle identity as the fallback
AsymptoticEstimate quadrature_route(const FunctionSystem& system, const ExponentVector& n,
                                    const NormSpec& norm) {
    Direction d = direction_of(n, norm);
    CriticalPoint zc = solve_critical(system, d);
    if (norm_of(n, norm) * zc.z > 32) {
        try {
            return integral_large(system, n, norm, choose_epsilon(system, d));
        } catch (const NoValidEpsilon&) {
        }
    }
    return integral_small(system, n, norm);
}

}  // namespace

// --------------------------------------------------------------------------
// trivariate

FunctionSystem trivariate_system() {
    return make_system({one_plus_z(), one_plus_2z()});
}

NormSpec trivariate_norm() {
    return NormSpec::wl1({Rational(1), Rational(1), Rational(2)});
}

ExponentVector trivariate_exponents(const TrivariateQuery& q) {
    check_trivariate(q);
    return ExponentVector{{q.t, q.k - 2 * q.n, q.n}};
}

BigCoefficient trivariate_exact(const TrivariateQuery& q) {
    check_trivariate(q);
    // inclusion-exclusion: sum_i (-1)^i C(n,i) C(k-2i, t-2i)
    Rational direct = 0;
    for (long i = 0; i <= q.n && 2 * i <= q.t; ++i) {
        Rational term = binomial(static_cast<unsigned long>(q.n), i).value *
                        binomial(static_cast<unsigned long>(q.k - 2 * i), q.t - 2 * i).value;
        direct += (i % 2 == 0) ? term : -term;
    }
    // generating-function route: [z^t] (1+z)^{k-2n} (1+2z)^n
    BigCoefficient gf = coeff_of_product(
        q.t, {{one_plus_z(), static_cast<unsigned long>(q.k - 2 * q.n)},
              {one_plus_2z(), static_cast<unsigned long>(q.n)}});
    if (gf.value != direct)
        throw InternalInconsistency("trivariate_exact: inclusion-exclusion and coefficient "
                                    "extraction disagree at n=" + std::to_string(q.n) +
                                    " k=" + std::to_string(q.k) + " t=" + std::to_string(q.t));
    return gf;
}

AsymptoticEstimate trivariate_estimate(const TrivariateQuery& q, EstimateMethod method) {
    check_trivariate(q);
    FunctionSystem sys = trivariate_system();
    NormSpec norm = trivariate_norm();
    ExponentVector n = trivariate_exponents(q);
    switch (method) {
        case EstimateMethod::auto_select: return estimate_auto(sys, n, norm);
        case EstimateMethod::gaussian: return gaussian_leading(sys, n, norm);
        case EstimateMethod::quadrature: return quadrature_route(sys, n, norm);
        case EstimateMethod::small_limit: return small_exponent_limit(sys, n, norm);
    }
    throw ConstraintViolation("trivariate_estimate: unknown method");
}

// --------------------------------------------------------------------------
// planar-map core

FunctionSystem planar_system() {
    return make_system({one_plus_z(), one_minus_z()}, one_minus_2z());
}

NormSpec planar_norm() { return NormSpec::linf(); }

namespace {

ExponentVector planar_exponents(const PlanarCoreQuery& q) {
    return ExponentVector{{q.n - q.k, 3 * q.n, q.k - 1}};
}

}  // namespace

BigCoefficient planar_core_exact(const PlanarCoreQuery& q) {
    check_planar(q);
    long n0 = q.n - q.k, n1 = 3 * q.n, n2 = q.k - 1;
    // two-term decomposition of the (1-2z) amplitude
    std::vector<std::pair<RationalPoly, unsigned long>> base{
        {one_plus_z(), static_cast<unsigned long>(n1)},
        {one_minus_z(), static_cast<unsigned long>(n2)}};
    Rational decomposed =
        coeff_of_product(n0, base).value - 2 * coeff_of_product(n0 - 1, base).value;
    // direct expansion of phi^n psi^{k-1} psi'
    RationalPoly phi({Rational(1), Rational(3), Rational(3), Rational(1)});  // (1+z)^3
    RationalPoly psi({Rational(0), Rational(1), Rational(-1)});              // z(1-z)
    BigCoefficient direct = coeff_of_product(
        q.n - 1, {{phi, static_cast<unsigned long>(q.n)},
                  {psi, static_cast<unsigned long>(q.k - 1)},
                  {one_minus_2z(), 1}});
    if (direct.value != decomposed)
        throw InternalInconsistency("planar_core_exact: decomposition and direct expansion "
                                    "disagree at n=" + std::to_string(q.n) +
                                    " k=" + std::to_string(q.k));
    return direct;
}

namespace {

// per-term Gaussian leading values at each term's own critical radius,
// combined with the decomposition weights 1, -2
AsymptoticEstimate planar_gaussian(const PlanarCoreQuery& q) {
    FunctionSystem sys = make_system({one_plus_z(), one_minus_z()});  // no amplitude
    NormSpec norm = planar_norm();
    ExponentVector na = planar_exponents(q);
    ExponentVector nb = na;
    nb.n[0] -= 1;
    if (nb.n0() < 0)
        throw CoalescenceError("planar_core_estimate: gaussian route needs n > k");
    AsymptoticEstimate a = gaussian_leading(sys, na, norm);
    AsymptoticEstimate b = gaussian_leading(sys, nb, norm);

    // T ~ A - 2B in sign/log form
    Real lb = b.log_abs + log(Real(2));
    Real m = a.log_abs > lb ? a.log_abs : lb;
    Real v = a.sign * exp(a.log_abs - m) - b.sign * exp(lb - m);
    AsymptoticEstimate est;
    if (v == 0) {
        est.sign = 0;
        est.log_abs = -real_infinity();
    } else {
        est.sign = v < 0 ? -1 : 1;
        est.log_abs = m + log(abs(v));
    }
    est.regime = Regime::large_exponent;
    est.method = Method::gaussian;
    est.diagnostics = a.diagnostics;
    if (a.diagnostics.tail_bound && b.diagnostics.tail_bound)
        est.diagnostics.tail_bound = *a.diagnostics.tail_bound > *b.diagnostics.tail_bound
                                         ? *a.diagnostics.tail_bound
                                         : *b.diagnostics.tail_bound;
    return est;
}

}  // namespace

AsymptoticEstimate planar_core_estimate(const PlanarCoreQuery& q, EstimateMethod method) {
    check_planar(q);
    FunctionSystem sys = planar_system();
    NormSpec norm = planar_norm();
    ExponentVector n = planar_exponents(q);
    switch (method) {
        case EstimateMethod::auto_select: {
            Direction d = direction_of(n, norm);
            CriticalPoint zc = solve_critical(sys, d);
            if (!(norm_of(n, norm) * zc.z > 32)) return small_exponent_limit(sys, n, norm);
            try {
                return planar_gaussian(q);
            } catch (const CoalescenceError&) {
            }
            return quadrature_route(sys, n, norm);
        }
        case EstimateMethod::gaussian: return planar_gaussian(q);
        case EstimateMethod::quadrature: return quadrature_route(sys, n, norm);
        case EstimateMethod::small_limit: return small_exponent_limit(sys, n, norm);
    }
    throw ConstraintViolation("planar_core_estimate: unknown method");
}

CoalescenceDiagnostic coalescence_diagnostic(const PlanarCoreQuery& q) {
    check_planar(q);
    // window direction (n-k, 3n, k)/(3n): the k-th slot carries the moving
    // index itself so the direction hits the coalescing ray exactly at k = n/3
    Direction d = make_direction(
        {Real(q.n - q.k) / (3 * q.n), Real(1), Real(q.k) / (3 * q.n)}, planar_norm());
    FunctionSystem sys = make_system({one_plus_z(), one_minus_z()});
    CoalescenceDiagnostic diag;
    diag.c2 = taylor_F(sys, d, 2).c(2).re;
    diag.window_coord = (Real(q.k) - Real(q.n) / 3) / pow(Real(q.n), Real(2) / 3);
    return diag;
}

// --------------------------------------------------------------------------
// local-limit assembly

bool IntegerSequence::has(long index) const {
    return index >= offset && index - offset < static_cast<long>(values.size());
}

const BigInt& IntegerSequence::at(long index) const {
    if (!has(index))
        throw DomainError("IntegerSequence: index " + std::to_string(index) +
                          " outside [" + std::to_string(offset) + ", " +
                          std::to_string(offset + static_cast<long>(values.size()) - 1) + "]");
    return values[static_cast<size_t>(index - offset)];
}

IntegerSequence load_sequence(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConstraintViolation("load_sequence: cannot open " + path);
    IntegerSequence seq;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        size_t end = line.find_last_not_of(" \t\r");
        std::string body = line.substr(start, end - start + 1);
        if (first && body.rfind("offset:", 0) == 0) {
            seq.offset = std::stol(body.substr(7));
            first = false;
            continue;
        }
        first = false;
        try {
            seq.values.emplace_back(body.c_str());
        } catch (const std::exception&) {
            throw ConstraintViolation("load_sequence: bad integer line '" + body + "' in " +
                                      path);
        }
    }
    if (seq.values.empty())
        throw ConstraintViolation("load_sequence: no values in " + path);
    return seq;
}

Rational planar_core_probability(const PlanarCoreQuery& q, const IntegerSequence& M,
                                 const IntegerSequence& C) {
    check_planar(q);
    BigCoefficient T = planar_core_exact(q);
    Rational denom = Rational(q.n) * Rational(M.at(q.n));
    if (denom == 0) throw DomainError("planar_core_probability: M_n = 0");
    return Rational(q.k) * Rational(C.at(q.k)) / denom * T.value;
}

}  // namespace mixedpowers
