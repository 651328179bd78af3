#include "doctest.h"
#include "util.hpp"

using namespace mptest;

namespace {
NormSpec wl1_112() { return NormSpec::wl1({Rational(1), Rational(1), Rational(2)}); }
FunctionSystem triv() { return make_system({P({1, 1}), P({1, 2})}); }
FunctionSystem planar_amp() { return make_system({P({1, 1}), P({1, -1})}, P({1, -2})); }

Cplx monomial(const Real& x, int k) {
    Cplx v{Real(1), Real(0)};
    for (int i = 0; i < k; ++i) v = v * Cplx{x, Real(0)};
    return v;
}
}

TEST_CASE("G7/K15 tables: degree exactness at working precision") {
    Cplx g, k;
    // K15 integrates degree 22 exactly; G7 degree 12; both fail at degree 24
    gk15_panel([](const Real& x) { return monomial(x, 22); }, Real(0), Real(1), g, k);
    CHECK(cabs(k - Cplx{Real(1) / 23, Real(0)}) < Real("1e-34"));

    gk15_panel([](const Real& x) { return monomial(x, 12); }, Real(0), Real(1), g, k);
    CHECK(cabs(g - Cplx{Real(1) / 13, Real(0)}) < Real("1e-34"));

    gk15_panel([](const Real& x) { return monomial(x, 24); }, Real(0), Real(1), g, k);
    // degree claim is sharp: the defect (~1.7e-16) is genuine, far above roundoff
    CHECK(cabs(k - Cplx{Real(1) / 25, Real(0)}) > Real("1e-20"));

    gk15_panel([](const Real& x) { return cexp(Cplx{x, Real(0)}); }, Real(0), Real(1), g, k);
    CHECK(cabs(k - Cplx{exp(Real(1)) - 1, Real(0)}) < Real("1e-30"));
}

TEST_CASE("adaptive quadrature: smooth and oscillatory integrands") {
    QuadratureResult r = integrate_adaptive(
        [](const Real& x) { return Cplx{1 / (1 + x * x), Real(0)}; }, Real(0), Real(1));
    CHECK(cabs(r.value - Cplx{pi() / 4, Real(0)}) < Real("1e-30"));
    CHECK(r.evaluations >= 15 * r.panels);

    // full period of e^{i x}: exact zero
    QuadratureResult osc = integrate_adaptive(
        [](const Real& x) { return cexp(Cplx{Real(0), x}); }, Real(0), 2 * pi());
    CHECK(cabs(osc.value) < Real("1e-25"));

    // e^{5 i x} on [0, 10]: (e^{50 i} - 1) / (5 i)
    QuadratureResult osc5 = integrate_adaptive(
        [](const Real& x) { return cexp(Cplx{Real(0), 5 * x}); }, Real(0), Real(10));
    Cplx expected = (cexp(Cplx{Real(0), Real(50)}) - Cplx{Real(1), Real(0)}) / Cplx{Real(0), Real(5)};
    CHECK(cabs(osc5.value - expected) < Real("1e-28"));

    // determinism: same partition, same sum, bit for bit
    QuadratureResult again = integrate_adaptive(
        [](const Real& x) { return cexp(Cplx{Real(0), 5 * x}); }, Real(0), Real(10));
    CHECK(again.value.re == osc5.value.re);
    CHECK(again.value.im == osc5.value.im);
    CHECK(again.panels == osc5.panels);
}

TEST_CASE("adaptive quadrature: panel budget is enforced") {
    QuadratureOptions opt;
    opt.max_panels = 64;
    CHECK_THROWS_AS(integrate_adaptive(
                        [](const Real& x) {
                            Real d = abs(x - Real(1) / 3);
                            return Cplx{1 / (d + Real("1e-30")), Real(0)};
                        },
                        Real(0), Real(1), opt),
                    ConvergenceError);
}

TEST_CASE("prefactor: signs and log magnitudes") {
    Prefactor pf = prefactor_at(triv(), ExponentVector{{7, 6, 6}}, Real(1));
    CHECK(pf.sign == 1);
    CHECK(near(pf.log_abs, 6 * log(Real(2)) + 6 * log(Real(3)), Real("1e-30")));

    // odd power of a negative factor value flips the sign; amplitude excluded
    Prefactor neg = prefactor_at(planar_amp(), ExponentVector{{0, 1, 3}}, Real(2));
    CHECK(neg.sign == -1);
    CHECK(near(neg.log_abs, log(Real(3)), Real("1e-30")));

    CHECK_THROWS_AS(prefactor_at(planar_amp(), ExponentVector{{0, 1, 1}}, Real(1)), PoleOnContour);
    CHECK_THROWS_AS(prefactor_at(triv(), ExponentVector{{1, 1, 1}}, Real(-1)), DomainError);
}

TEST_CASE("integral_small is an exact identity, not an expansion") {
    BigCoefficient exact = coeff_of_product(7, {{P({1, 1}), 6}, {P({1, 2}), 6}});
    CHECK(exact.value == 10836);
    AsymptoticEstimate est = integral_small(triv(), ExponentVector{{7, 6, 6}}, wl1_112());
    CHECK(est.sign == 1);
    CHECK(est.regime == Regime::small_exponent);
    CHECK(abs(rel_of(exact, est)) < Real("1e-10"));

    // with an amplitude factor: [z^1] (1+z)^9 (1-z) (1-2z) = 6
    BigCoefficient pexact =
        coeff_of_product(1, {{P({1, 1}), 9}, {P({1, -1}), 1}, {P({1, -2}), 1}});
    CHECK(pexact.value == 6);
    AsymptoticEstimate pest = integral_small(planar_amp(), ExponentVector{{1, 9, 1}},
                                             NormSpec::linf());
    CHECK(abs(rel_of(pexact, pest)) < Real("1e-10"));
}

TEST_CASE("integral_small at n0 = 0 short-circuits to the constant term") {
    AsymptoticEstimate est = integral_small(triv(), ExponentVector{{0, 5, 3}}, wl1_112());
    CHECK(est.method == Method::exact);
    CHECK(est.sign == 1);
    CHECK(abs(est.log_abs) < Real("1e-30"));  // [z^0] (1+z)^5 (1+2z)^3 = 1
}

TEST_CASE("integral_large: truncated arc, tail diagnostics, epsilon validation") {
    ExponentVector n{{7, 6, 6}};
    BigCoefficient exact = coeff_of_product(7, {{P({1, 1}), 6}, {P({1, 2}), 6}});

    AsymptoticEstimate half = integral_large(triv(), n, wl1_112(), pi() / 2);
    CHECK(half.regime == Regime::large_exponent);
    CHECK(half.diagnostics.epsilon.has_value());
    CHECK(half.diagnostics.tail_bound.has_value());
    // the omitted tail is the whole error; both must be small and consistent
    CHECK(*half.diagnostics.tail_bound < Real("0.05"));
    CHECK(abs(rel_of(exact, half)) < 3 * *half.diagnostics.tail_bound + Real("1e-10"));

    // full-width arc reproduces the exact identity bit for bit
    AsymptoticEstimate full = integral_large(triv(), n, wl1_112(), pi());
    AsymptoticEstimate small = integral_small(triv(), n, wl1_112());
    CHECK(full.log_abs == small.log_abs);
    CHECK(*full.diagnostics.tail_bound == 0);

    CHECK_THROWS_AS(integral_large(triv(), n, wl1_112(), Real(0)), BadEpsilon);
    CHECK_THROWS_AS(integral_large(triv(), n, wl1_112(), Real(4)), BadEpsilon);
}

TEST_CASE("choose_epsilon picks the widest admissible arc") {
    Direction d = direction_of(ExponentVector{{7, 6, 6}}, wl1_112());
    CHECK(near(choose_epsilon(triv(), d), pi() / 2, Real("1e-30")));
    // Z = 0: no arc has Re F(eps) > 0
    Direction boundary = make_direction({Real(0), Real(1) / 3, Real(1) / 3}, wl1_112());
    CHECK_THROWS_AS(choose_epsilon(triv(), boundary), NoValidEpsilon);
}

TEST_CASE("gaussian_leading: accuracy and refusals") {
    // binomial spot: [z^50] (1+z)^100, estimate high by ~1/(4 ||n||)
    BigCoefficient exact = binomial(100, 50);
    AsymptoticEstimate est = gaussian_leading(triv(), ExponentVector{{50, 100, 0}}, wl1_112());
    Real rel = rel_of(exact, est);
    CHECK(rel > Real("0.0020"));
    CHECK(rel < Real("0.0030"));
    CHECK(est.diagnostics.tail_bound.has_value());

    // coalescing direction: c2 = 0
    FunctionSystem pl = planar_amp();
    CHECK_THROWS_AS(gaussian_leading(pl, ExponentVector{{200, 900, 100}}, NormSpec::linf()),
                    CoalescenceError);
    // near-coalescing: c2 > 0 but the cubic term dominates at this scale
    CHECK_THROWS_AS(gaussian_leading(pl, ExponentVector{{200, 900, 99}}, NormSpec::linf()),
                    CoalescenceError);
}

TEST_CASE("small_exponent_limit: exact rational mu and the regime gate") {
    // exponents of the query (10, 1000, 2): mu = 980 + 2*10 = 1000, mu^2/2! = 500000
    AsymptoticEstimate est = small_exponent_limit(triv(), ExponentVector{{2, 980, 10}}, wl1_112());
    CHECK(est.sign == 1);
    CHECK(est.method == Method::small_limit);
    CHECK(near(est.log_abs, log(Real(500000)), Real("1e-28")));

    CHECK_THROWS_AS(small_exponent_limit(triv(), ExponentVector{{50, 100, 0}}, wl1_112()),
                    RegimeError);
}

TEST_CASE("estimate_auto dispatches on the nz indicator") {
    CHECK(estimate_auto(triv(), ExponentVector{{2, 980, 10}}, wl1_112()).method ==
          Method::small_limit);
    CHECK(estimate_auto(triv(), ExponentVector{{50, 100, 0}}, wl1_112()).method ==
          Method::gaussian);
    AsymptoticEstimate fallback =
        estimate_auto(planar_amp(), ExponentVector{{200, 900, 99}}, NormSpec::linf());
    CHECK(fallback.method == Method::quadrature);
    CHECK(fallback.regime == Regime::large_exponent);
}
