#include "mixedpowers/saddle_engine.hpp"

#include "mixedpowers/errors.hpp"
#include "mixedpowers/rational_poly.hpp"

namespace mixedpowers {

using bmp::abs;
using bmp::exp;
using bmp::log;
using bmp::sqrt;

namespace {

Real pow10(int e) {
    Real r = 1;
    for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= 10;
    return e < 0 ? Real(1) / r : r;
}

Real theta_cap() { return pi() * (Real(1) - Real(1) / Real(1 << 16)); }

std::vector<Real> tail_weights(const ExponentVector& n) {
    std::vector<Real> w;
    for (size_t j = 1; j < n.n.size(); ++j) w.emplace_back(n.n[j]);
    return w;
}

// e^{-||n|| F(theta)} A(Z e^{i theta}) with the exponent assembled from the
// integer n_j directly (no norm roundoff): sum_j n_j log-ratio_j - i n0 theta
std::function<Cplx(const Real&)> make_kernel(const PhaseEvaluator& phase,
                                             const FunctionSystem& system,
                                             const ExponentVector& n) {
    std::vector<Real> w = tail_weights(n);
    Real n0(n.n0());
    FactorPtr amp = system.amplitude;
    Real Z = phase.Z();
    return [&phase, w = std::move(w), n0 = std::move(n0), amp, Z](const Real& theta) {
        Cplx e = phase.weighted_log(w, theta);
        e.im -= n0 * theta;
        Cplx v = cexp(e);
        if (amp) v = v * amp->eval(Cplx{Z} * polar(Real(1), theta), 0);
        return v;
    };
}

// exact value at Z = 0: the coefficient degenerates to the constant-term
// product prod f_j(0)^{n_j} A(0) (n0 = 0 is forced by d0 = 0)
AsymptoticEstimate exact_at_origin(const FunctionSystem& system, const ExponentVector& n) {
    if (n.n0() != 0)
        throw InternalInconsistency("integral_small: Z = 0 with n0 != 0");
    int sign = 1;
    Real log_abs = 0;
    for (int j = 1; j <= system.m(); ++j) {
        long nj = n.n[static_cast<size_t>(j)];
        if (nj == 0) continue;
        Real f0 = eval_f(system, j, Cplx{Real(0)}, 0).re;
        if (f0 == 0) {
            sign = 0;
            log_abs = -real_infinity();
            break;
        }
        if (f0 < 0 && nj % 2 != 0) sign = -sign;
        log_abs += Real(nj) * log(abs(f0));
    }
    if (system.amplitude && sign != 0) {
        Real a0 = system.amplitude->eval(Cplx{Real(0)}, 0).re;
        if (a0 == 0) {
            sign = 0;
            log_abs = -real_infinity();
        } else {
            if (a0 < 0) sign = -sign;
            log_abs += log(abs(a0));
        }
    }
    AsymptoticEstimate est;
    est.sign = sign;
    est.log_abs = log_abs;
    est.regime = Regime::small_exponent;
    est.method = Method::exact;
    est.diagnostics.nz_product = 0;
    est.diagnostics.c2 = 0;
    return est;
}

int amplitude_sign(const FunctionSystem& system, const Real& Z, Real& log_abs_out) {
    log_abs_out = 0;
    if (!system.amplitude) return 1;
    Real a = system.amplitude->eval(Cplx{Z}, 0).re;
    if (a == 0) {
        log_abs_out = -real_infinity();
        return 0;
    }
    log_abs_out = log(abs(a));
    return a < 0 ? -1 : 1;
}

AsymptoticEstimate from_integral(const FunctionSystem& system, const ExponentVector& n,
                                 const Real& Z, const Cplx& integral) {
    Prefactor pre = prefactor_at(system, n, Z);
    Real v = integral.re;  // imaginary part cancels for real systems
    AsymptoticEstimate est;
    if (v == 0 || pre.sign == 0) {
        est.sign = 0;
        est.log_abs = -real_infinity();
    } else {
        est.sign = v < 0 ? -pre.sign : pre.sign;
        est.log_abs = pre.log_abs + log(abs(v)) - log(2 * pi());
    }
    return est;
}

}  // namespace

Prefactor prefactor_at(const FunctionSystem& system, const ExponentVector& n, const Real& Z) {
    if (Z <= 0) throw DomainError("prefactor_at: Z must be positive");
    Prefactor pre{1, -Real(n.n0()) * log(Z)};
    for (int j = 1; j <= system.m(); ++j) {
        long nj = n.n[static_cast<size_t>(j)];
        if (nj == 0) continue;
        Real f = eval_f(system, j, Cplx{Z}, 0).re;
        if (f == 0) throw PoleOnContour("prefactor_at: f_" + std::to_string(j) + "(Z) = 0");
        if (f < 0 && nj % 2 != 0) pre.sign = -pre.sign;
        pre.log_abs += Real(nj) * log(abs(f));
    }
    return pre;
}

QuadratureResult phase_integral(const PhaseEvaluator& phase, const FunctionSystem& system,
                                const ExponentVector& n, const Real& norm_n, const Real& lo,
                                const Real& hi, const Real& tol) {
    (void)norm_n;
    auto kernel = make_kernel(phase, system, n);
    // tolerance applies to the integrand normalized by its theta = 0 value;
    // when that value is 0 (amplitude zero at Z) integrate unnormalized
    Cplx k0 = kernel(Real(0));
    Real scale = cabs(k0);
    QuadratureOptions opt;
    opt.tol = tol;
    if (scale == 0) return integrate_adaptive(kernel, lo, hi, opt);
    QuadratureResult res = integrate_adaptive(
        [&kernel, &scale](const Real& t) { return kernel(t) / scale; }, lo, hi, opt);
    res.value = res.value * scale;
    res.error_estimate = res.error_estimate * scale;
    return res;
}

AsymptoticEstimate integral_small(const FunctionSystem& system, const ExponentVector& n,
                                  const NormSpec& norm) {
    Direction d = direction_of(n, norm);
    CriticalPoint zc = solve_critical(system, d);
    if (zc.z == 0) return exact_at_origin(system, n);
    Real N = norm_of(n, norm);
    PhaseEvaluator phase(system, d, zc.z);
    // the full circle: GK nodes are interior, so a factor zero sitting exactly
    // at theta = +-pi is never evaluated and the identity stays exact
    QuadratureResult q = phase_integral(phase, system, n, N, -pi(), pi(), pow10(-12));
    AsymptoticEstimate est = from_integral(system, n, zc.z, q.value);
    est.regime = Regime::small_exponent;
    est.method = Method::quadrature;
    est.diagnostics.nz_product = N * zc.z;
    est.diagnostics.c2 = taylor_F_at(system, d, zc, 2).c(2).re;
    return est;
}

AsymptoticEstimate integral_large(const FunctionSystem& system, const ExponentVector& n,
                                  const NormSpec& norm, const Real& epsilon) {
    if (!(epsilon > 0) || epsilon > pi())
        throw BadEpsilon("integral_large: epsilon must lie in (0, pi]");
    Direction d = direction_of(n, norm);
    CriticalPoint zc = solve_critical(system, d);
    if (zc.z == 0)
        throw BadEpsilon("integral_large: Z = 0, no arc representation (use integral_small)");
    Real N = norm_of(n, norm);
    PhaseEvaluator phase(system, d, zc.z);
    const Real& eps = epsilon;
    // the arc-end check probes just inside the endpoint so a factor zero at
    // theta = +-pi (where Re F = +inf) does not upset the comparison
    Real probe = eps < theta_cap() ? eps : theta_cap();
    if (!(phase.F(probe).re > 0) || !(phase.F(-probe).re > 0))
        throw BadEpsilon("integral_large: Re F not strictly positive at the arc ends");

    QuadratureResult q = phase_integral(phase, system, n, N, -eps, eps, pow10(-12));

    // coarse fixed-grid estimate of the omitted arcs, relative to the
    // retained part (diagnostic only; never used to adapt)
    Real tail = 0;
    if (eps < pi()) {
        auto kernel = make_kernel(phase, system, n);
        Cplx tail_sum;
        const int panels = 16;
        for (int side = 0; side < 2; ++side) {
            Real a = side == 0 ? eps : -pi();
            Real b = side == 0 ? pi() : -eps;
            Real h = (b - a) / panels;
            for (int i = 0; i < panels; ++i) {
                Cplx g, k;
                gk15_panel(kernel, a + h * i, a + h * (i + 1), g, k);
                tail_sum += k;
            }
        }
        Real retained = cabs(q.value);
        tail = retained > 0 ? cabs(tail_sum) / retained : real_infinity();
    }

    AsymptoticEstimate est = from_integral(system, n, zc.z, q.value);
    est.regime = Regime::large_exponent;
    est.method = Method::quadrature;
    est.diagnostics.nz_product = N * zc.z;
    est.diagnostics.c2 = taylor_F_at(system, d, zc, 2).c(2).re;
    est.diagnostics.epsilon = eps;
    est.diagnostics.tail_bound = tail;
    return est;
}

AsymptoticEstimate gaussian_leading(const FunctionSystem& system, const ExponentVector& n,
                                    const NormSpec& norm) {
    Direction d = direction_of(n, norm);
    CriticalPoint zc = solve_critical(system, d);
    if (zc.z == 0)
        throw CoalescenceError("gaussian_leading: Z = 0, no interior critical point");
    Real N = norm_of(n, norm);
    PhaseExpansion pe = taylor_F_at(system, d, zc, 4);
    Real c2 = pe.c(2).re;
    if (!(c2 > pow10(-6)))
        throw CoalescenceError("gaussian_leading: c2 = " + real_str(c2, 6) +
                               " below threshold, saddle points coalesce");
    Real c3_abs = cabs(pe.c(3));
    if (c3_abs > c2 * sqrt(c2) * sqrt(N))
        throw CoalescenceError("gaussian_leading: |c3| = " + real_str(c3_abs, 6) +
                               " dominates the quadratic term at ||n|| = " + real_str(N, 6));

    Prefactor pre = prefactor_at(system, n, zc.z);
    Real amp_log;
    int amp_sign = amplitude_sign(system, zc.z, amp_log);

    AsymptoticEstimate est;
    est.sign = pre.sign * amp_sign;
    if (est.sign == 0) {
        est.log_abs = -real_infinity();
    } else {
        est.log_abs =
            pre.log_abs + amp_log - log(2 * pi()) + (log(pi()) - log(N * c2)) / 2;
    }
    est.regime = Regime::large_exponent;
    est.method = Method::gaussian;
    est.diagnostics.nz_product = N * zc.z;
    est.diagnostics.c2 = c2;
    // next-order term of the expansion: (15 c3^2 / (16 c2^3) - 3 c4 / (4 c2^2)) / N
    Cplx corr = Real(15) * (pe.c(3) * pe.c(3)) / (16 * c2 * c2 * c2) -
                Real(3) * pe.c(4) / (4 * c2 * c2);
    est.diagnostics.tail_bound = cabs(corr) / N;
    return est;
}

Real choose_epsilon(const FunctionSystem& system, const Direction& d) {
    CriticalPoint zc = solve_critical(system, d);
    if (zc.z == 0) throw NoValidEpsilon("choose_epsilon: Z = 0");
    PhaseEvaluator phase(system, d, zc.z);
    Real eps = pi();
    for (int k = 1; k <= 8; ++k) {
        eps /= 2;
        Real prev = 0;
        bool ok = true;
        for (int i = 1; i <= 64; ++i) {
            Real re = phase.F(eps * i / 64).re;
            if (re < prev) {
                ok = false;
                break;
            }
            prev = re;
        }
        if (ok && prev > 0) return eps;
    }
    throw NoValidEpsilon("choose_epsilon: Re F not increasing on any candidate arc");
}

AsymptoticEstimate small_exponent_limit(const FunctionSystem& system, const ExponentVector& n,
                                        const NormSpec& norm) {
    Direction d = direction_of(n, norm);
    CriticalPoint zc = solve_critical(system, d);
    Real N = norm_of(n, norm);
    Real nz = N * zc.z;
    if (nz > 32)
        throw RegimeError("small_exponent_limit: ||n|| Z = " + real_str(nz, 6) +
                          " is outside the small-exponent regime");

    // mu = sum n_j f_j'(0)/f_j(0), exact in the rationals
    Rational mu = 0;
    int sign = 1;
    Real log_abs = 0;
    for (int j = 1; j <= system.m(); ++j) {
        long nj = n.n[static_cast<size_t>(j)];
        if (nj == 0) continue;
        const RationalPoly* p = system.factors[static_cast<size_t>(j - 1)]->poly();
        if (p == nullptr)
            throw ConstraintViolation("small_exponent_limit: needs polynomial factors");
        Rational f0 = p->coeff(0);
        if (f0 == 0) throw ConstraintViolation("small_exponent_limit: f_j(0) = 0");
        mu += Rational(nj) * (p->coeff(1) / f0);
        if (f0 < 0 && nj % 2 != 0) sign = -sign;
        log_abs += Real(nj) * log_abs_rational(f0);
    }
    if (system.amplitude) {
        Real a0 = system.amplitude->eval(Cplx{Real(0)}, 0).re;
        if (a0 == 0) {
            sign = 0;
        } else {
            if (a0 < 0) sign = -sign;
            log_abs += log(abs(a0));
        }
    }
    long n0 = n.n0();
    if (n0 > 0) {
        if (mu == 0) {
            sign = 0;
        } else {
            if (mu < 0 && n0 % 2 != 0) sign = -sign;
            log_abs += Real(n0) * log_abs_rational(mu) - log_abs_rational(Rational(factorial(n0)));
        }
    }

    AsymptoticEstimate est;
    est.sign = sign;
    est.log_abs = sign == 0 ? -real_infinity() : log_abs;
    est.regime = Regime::small_exponent;
    est.method = Method::small_limit;
    est.diagnostics.nz_product = nz;
    est.diagnostics.c2 = zc.z == 0 ? Real(0) : taylor_F_at(system, d, zc, 2).c(2).re;
    return est;
}

AsymptoticEstimate estimate_auto(const FunctionSystem& system, const ExponentVector& n,
                                 const NormSpec& norm) {
    Direction d = direction_of(n, norm);
    CriticalPoint zc = solve_critical(system, d);
    Real nz = norm_of(n, norm) * zc.z;
    if (!(nz > 32)) return small_exponent_limit(system, n, norm);
    try {
        return gaussian_leading(system, n, norm);
    } catch (const CoalescenceError&) {
    }
    try {
        return integral_large(system, n, norm, choose_epsilon(system, d));
    } catch (const NoValidEpsilon&) {
        return integral_small(system, n, norm);
    }
}

}  // namespace mixedpowers
