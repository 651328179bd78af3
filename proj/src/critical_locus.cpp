#include "mixedpowers/critical_locus.hpp"

#include <numeric>
#include <sstream>

#include "mixedpowers/errors.hpp"

namespace mixedpowers {

using bmp::abs;
using bmp::exp;
using bmp::log;
using bmp::sqrt;

namespace {

Real pow10(int e) {
    Real r = 1;
    Real ten = 10;
    for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= ten;
    return e < 0 ? Real(1) / r : r;
}

// g(z) = sum_j d_j z f_j'(z)/f_j(z) - d0 at real z inside {all f_j != 0}
Real g_value(const FunctionSystem& system, const Direction& d, const Real& z) {
    Real s = -d.d[0];
    for (int j = 1; j <= system.m(); ++j) {
        const Real& dj = d.d[static_cast<size_t>(j)];
        if (dj == 0) continue;
        Cplx zc{z};
        Cplx f = eval_f(system, j, zc, 0);
        s += dj * z * (eval_f(system, j, zc, 1) / f).re;
    }
    return s;
}

Real g_derivative(const FunctionSystem& system, const Direction& d, const Real& z) {
    // d/dz [z f'/f] = f'/f + z (f'' f - f'^2)/f^2
    Real s = 0;
    for (int j = 1; j <= system.m(); ++j) {
        const Real& dj = d.d[static_cast<size_t>(j)];
        if (dj == 0) continue;
        Cplx zc{z};
        Real f = eval_f(system, j, zc, 0).re;
        Real f1 = eval_f(system, j, zc, 1).re;
        Real f2 = eval_f(system, j, zc, 2).re;
        s += dj * (f1 / f + z * (f2 * f - f1 * f1) / (f * f));
    }
    return s;
}

bool all_factors_positive(const FunctionSystem& system, const Real& z) {
    for (int j = 1; j <= system.m(); ++j)
        if (eval_f(system, j, Cplx{z}, 0).re <= 0) return false;
    return true;
}

// Newton safeguarded by the bracket [lo, hi] with g(lo) <= 0 <= g(hi) or the
// reverse; falls back to bisection whenever the Newton step leaves the
// bracket or stalls
Real refine_root(const FunctionSystem& system, const Direction& d, Real lo, Real hi) {
    Real glo = g_value(system, d, lo);
    Real ghi = g_value(system, d, hi);
    if (glo == 0) return lo;
    if (ghi == 0) return hi;
    if ((glo > 0) == (ghi > 0))
        throw NoSolution("solve_critical: supplied bracket does not straddle a root");
    Real z = (lo + hi) / 2;
    Real tol = pow10(-static_cast<int>(Real::default_precision()) + 4);
    std::ostringstream trace;
    for (int it = 0; it < 200; ++it) {
        Real g = g_value(system, d, z);
        if (abs(g) <= tol) return z;
        if ((g > 0) == (ghi > 0))
            hi = z;
        else
            lo = z;
        Real dg = g_derivative(system, d, z);
        Real znext = dg != 0 ? z - g / dg : lo;
        if (!(znext > lo && znext < hi)) znext = (lo + hi) / 2;
        trace << "it " << it << " z=" << real_str(z, 20) << " g=" << real_str(g, 6) << "\n";
        if (abs(znext - z) <= abs(z) * tol && abs(g) <= pow10(-12)) return znext;
        z = znext;
    }
    if (abs(g_value(system, d, z)) <= pow10(-10)) return z;
    throw NonConvergence("solve_critical: Newton/bisection failed to converge\n" + trace.str());
}

bool is_aperiodic_nonneg_precheck(const FunctionSystem& system, const Direction& d) {
    bool some_aperiodic_weighted = false;
    for (int j = 1; j <= system.m(); ++j) {
        const RationalPoly* p = system.factors[static_cast<size_t>(j - 1)]->poly();
        if (p == nullptr || !p->is_nonnegative()) return false;
        if (d.d[static_cast<size_t>(j)] > 0) {
            long g = 0;
            for (long i = 1; i <= p->degree(); ++i)
                if (p->coeff(i) != 0) g = std::gcd(g, i);
            if (g == 1) some_aperiodic_weighted = true;
        }
    }
    return some_aperiodic_weighted;
}

// log of prod |f_j(z e^{i theta})|^{d_j}
Real circle_log_value(const FunctionSystem& system, const Direction& d, const Real& z,
                      const Real& theta) {
    Real s = 0;
    Cplx pt = polar(z, theta);
    for (int j = 1; j <= system.m(); ++j) {
        const Real& dj = d.d[static_cast<size_t>(j)];
        if (dj == 0) continue;
        Real a = cabs(eval_f(system, j, pt, 0));
        if (a == 0) return -real_infinity();
        s += dj * log(a);
    }
    return s;
}

}  // namespace

Real critical_residual(const FunctionSystem& system, const Direction& d, const Real& z) {
    return abs(g_value(system, d, z));
}

std::pair<Real, bool> verify_strict_minimality(const FunctionSystem& system, const Direction& d,
                                               const Real& z, int samples) {
    if (z == 0) return {real_infinity(), true};  // radius-0 circle is a point
    Real v0 = circle_log_value(system, d, z, Real(0));
    Real best = -real_infinity();
    Real best_theta = 0;
    const Real two_pi = 2 * pi();
    for (int i = 1; i <= samples; ++i) {  // theta in (-pi, pi], 0 skipped
        Real theta = -pi() + two_pi * i / samples;
        if (theta == 0) continue;
        Real v = circle_log_value(system, d, z, theta);
        if (v > best) {
            best = v;
            best_theta = theta;
        }
    }
    // local refinement of the strongest competitor (golden-section ascent);
    // keep the window away from theta = 0 so a competitor adjacent to the
    // maximum cannot rediscover the maximum itself
    Real h = two_pi / samples;
    Real a = best_theta - h, b = best_theta + h;
    if (best_theta > 0 && a < h / 4) a = h / 4;
    if (best_theta < 0 && b > -h / 4) b = -h / 4;
    const Real gr = (sqrt(Real(5)) - 1) / 2;
    Real x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    Real f1 = circle_log_value(system, d, z, x1), f2 = circle_log_value(system, d, z, x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = circle_log_value(system, d, z, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = circle_log_value(system, d, z, x1);
        }
    }
    Real competitor = f1 > f2 ? f1 : f2;
    if (competitor > best) best = competitor;
    // exclude a tie that is just theta = 0 rediscovered by refinement
    Real margin = exp(v0) - exp(best);
    bool strict = margin > pow10(-12) * abs(exp(v0));
    if (is_aperiodic_nonneg_precheck(system, d)) strict = true;
    return {margin, strict};
}

CriticalPoint solve_critical(const FunctionSystem& system, const Direction& d,
                             std::optional<std::pair<Real, Real>> bracket) {
    validate(system);
    if (static_cast<int>(d.d.size()) != system.m() + 1)
        throw ConstraintViolation("solve_critical: direction has wrong length");
    if (d.d[0] == 0) {
        CriticalPoint cp{Real(0), Real(0), real_infinity(), true};
        return cp;
    }

    Real root;
    if (bracket) {
        root = refine_root(system, d, bracket->first, bracket->second);
    } else {
        // search ceiling: radius, or the positivity boundary for mixed-sign
        // systems, or an adaptive bound for unbounded monotone right sides
        Real z_sup;
        bool bounded_by_sign = false;
        if (!is_inf(system.radius)) {
            z_sup = system.radius * Real(999) / 1000;
        } else {
            z_sup = 1;
            while (all_factors_positive(system, z_sup) &&
                   g_value(system, d, z_sup) < 0 && z_sup < pow10(12))
                z_sup *= 2;
        }
        if (!all_factors_positive(system, z_sup)) {
            // bisect the positivity boundary, then stay strictly inside it
            Real lo = 0, hi = z_sup;
            for (int it = 0; it < 128; ++it) {
                Real mid = (lo + hi) / 2;
                (all_factors_positive(system, mid) ? lo : hi) = mid;
            }
            z_sup = lo;
            bounded_by_sign = true;
        }
        if (z_sup >= pow10(12))
            throw NoSolution("solve_critical: right side never reaches d0 (d outside D)");

        // first sign change of g on (0, z_sup); g(0) = -d0 < 0
        const int grid = bounded_by_sign ? 512 : 64;
        std::vector<Real> gs(static_cast<size_t>(grid) + 1);
        gs[0] = -d.d[0];
        bool found = false;
        Real lo = 0, hi = 0;
        for (int i = 1; i <= grid; ++i) {
            Real zi = z_sup * i / grid;
            gs[static_cast<size_t>(i)] = g_value(system, d, zi);
            if (!found && gs[static_cast<size_t>(i - 1)] < 0 && gs[static_cast<size_t>(i)] >= 0) {
                lo = z_sup * (i - 1) / grid;
                hi = zi;
                found = true;
            }
        }
        if (found) {
            root = refine_root(system, d, lo, hi);
        } else {
            // No crossing: d may sit on the boundary of D, where g has a
            // tangent double root (the coalescing case). Refine the interior
            // maximum of g by bisecting g' and accept it as the root when the
            // defect |g| is negligible.
            size_t imax = 1;
            for (size_t i = 2; i < gs.size(); ++i)
                if (gs[i] > gs[imax]) imax = i;
            if (imax + 1 >= gs.size())
                throw NoSolution("solve_critical: no root of the direction equation in the "
                                 "search region (d outside D)");
            Real a = z_sup * (static_cast<long>(imax) - 1) / grid;
            Real b = z_sup * (static_cast<long>(imax) + 1) / grid;
            if (!(g_derivative(system, d, a) > 0) || !(g_derivative(system, d, b) < 0))
                throw NoSolution("solve_critical: no root of the direction equation in the "
                                 "search region (d outside D)");
            for (int it = 0; it < 40 + static_cast<int>(Real::default_precision()) * 4; ++it) {
                Real mid = (a + b) / 2;
                (g_derivative(system, d, mid) > 0 ? a : b) = mid;
            }
            root = (a + b) / 2;
            if (abs(g_value(system, d, root)) > pow10(-12))
                throw NoSolution("solve_critical: g stays below d0 everywhere (d outside D, "
                                 "max defect " + real_str(g_value(system, d, root), 6) + ")");
        }
    }

    CriticalPoint cp;
    cp.z = root;
    cp.residual = critical_residual(system, d, root);
    auto [margin, strict] = verify_strict_minimality(system, d, root);
    cp.minimality_margin = margin;
    cp.strictly_minimal = strict;
    return cp;
}

namespace {

// shared tail: package a closed-form root with residual + certificate
CriticalPoint certify(const FunctionSystem& system, const Direction& d, const Real& z) {
    CriticalPoint cp;
    cp.z = z;
    cp.residual = z == 0 ? Real(0) : critical_residual(system, d, z);
    if (z == 0) {
        cp.minimality_margin = real_infinity();
        cp.strictly_minimal = true;
    } else {
        auto [margin, strict] = verify_strict_minimality(system, d, z);
        cp.minimality_margin = margin;
        cp.strictly_minimal = strict;
    }
    return cp;
}

FunctionSystem trivariate_sys() {
    return make_system({RationalPoly({Rational(1), Rational(1)}),
                        RationalPoly({Rational(1), Rational(2)})});
}
FunctionSystem planar_sys() {
    return make_system({RationalPoly({Rational(1), Rational(1)}),
                        RationalPoly({Rational(1), Rational(-1)})});
}

}  // namespace

CriticalPoint z_formula_trivariate(const Direction& d) {
    if (d.d.size() != 3)
        throw ConstraintViolation("z_formula_trivariate: direction must have 3 coordinates");
    const Real &d0 = d.d[0], &d1 = d.d[1], &d2 = d.d[2];
    if (d1 + d2 <= d0)
        throw DomainError("z_formula_trivariate: d outside D (requires d1 + d2 > d0)");
    Real b = d1 + 2 * d2 - 3 * d0;
    Real rad = b * b + 8 * d0 * (d1 + d2 - d0);
    Real Z = d0 == 0 ? Real(0) : 2 * d0 / (b + sqrt(rad));
    return certify(trivariate_sys(), d, Z);
}

CriticalPoint z_formula_planar(const Direction& d) {
    if (d.d.size() != 3)
        throw ConstraintViolation("z_formula_planar: direction must have 3 coordinates");
    const Real &d0 = d.d[0], &d1 = d.d[1], &d2 = d.d[2];
    Real tol = pow10(-9);
    if (abs(d1 - 1) > pow10(-12))
        throw DomainError("z_formula_planar: requires d1 = 1 under the L-infinity norm");
    if (abs(d0) < tol && abs(d2 - 1) < tol)
        throw DomainError("z_formula_planar: (0,1,1) is excluded from D");
    if (abs(d0 - 1) < tol && abs(d2) < tol)
        throw DomainError("z_formula_planar: (1,1,0) is excluded from D");
    Real b = d1 - d2;
    Real disc = b * b - 4 * d0 * (d1 + d2 - d0);
    // directions meant to sit exactly on the coalescence boundary compute to
    // a slightly negative disc in floating point; clamp a thin band to 0
    if (disc < 0) {
        if (disc < -pow10(-15))
            throw DomainError("z_formula_planar: d outside D (negative discriminant)");
        disc = 0;
    }
    Real Z = d0 == 0 ? Real(0) : 2 * d0 / (b + sqrt(disc));
    return certify(planar_sys(), d, Z);
}

Direction direction_of_z(const FunctionSystem& system, const Real& z,
                         const std::vector<Real>& tail, const NormSpec& norm) {
    validate(system);
    if (static_cast<int>(tail.size()) != system.m())
        throw ConstraintViolation("direction_of_z: tail has wrong length");
    bool nonzero = false;
    for (const auto& t : tail) {
        if (t < 0) throw ConstraintViolation("direction_of_z: tail must be nonnegative");
        if (t > 0) nonzero = true;
    }
    if (!nonzero) throw ConstraintViolation("direction_of_z: tail must be nonzero");
    Real d0 = 0;
    for (int j = 1; j <= system.m(); ++j) {
        const Real& tj = tail[static_cast<size_t>(j - 1)];
        if (tj == 0) continue;
        d0 += tj * log_derivative(system, j, Cplx{z}).re;
    }
    if (d0 < 0)
        throw DomainError("direction_of_z: tail gives a negative d0(z) at this z");
    std::vector<Real> v;
    v.push_back(d0);
    for (const auto& t : tail) v.push_back(t);
    Real nn = norm.norm(v);
    for (auto& x : v) x /= nn;
    return make_direction(std::move(v), norm);
}

}  // namespace mixedpowers
