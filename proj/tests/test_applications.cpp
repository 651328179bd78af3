#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "util.hpp"

using namespace mptest;

namespace {
std::string write_temp(const std::string& name, const std::string& body) {
    std::string path = std::string("mp_test_") + name;
    std::ofstream out(path);
    out << body;
    return path;
}
}

TEST_CASE("trivariate exact: frozen regression values") {
    CHECK(trivariate_exact({1, 4, 2}).value == 5);
    CHECK(trivariate_exact({10, 1000, 2}).value == 499490);
    CHECK(trivariate_exact({10, 250, 3}).value == 2570520);
    CHECK(trivariate_exact({0, 100, 50}).value.str() == "100891344545564193334812497256");
    // the exponent-vector view: [z^t] (1+z)^{k-2n} (1+2z)^n
    CHECK(coeff_of_product(2, {{P({1, 1}), 4}, {P({1, 2}), 3}}).value ==
          trivariate_exact({3, 10, 2}).value);
}

TEST_CASE("trivariate query validation") {
    CHECK_THROWS_AS(trivariate_exact({3, 5, 1}), ConstraintViolation);   // 2n > k
    CHECK_THROWS_AS(trivariate_exact({-1, 4, 1}), ConstraintViolation);
    CHECK_THROWS_AS(trivariate_estimate({3, 5, 1}), ConstraintViolation);
}

TEST_CASE("trivariate estimates against the exact oracle") {
    TrivariateQuery q{0, 100, 50};
    BigCoefficient exact = trivariate_exact(q);

    AsymptoticEstimate g = trivariate_estimate(q, EstimateMethod::gaussian);
    Real grel = rel_of(exact, g);
    CHECK(grel > Real("0.0020"));
    CHECK(grel < Real("0.0030"));

    AsymptoticEstimate quad = trivariate_estimate(q, EstimateMethod::quadrature);
    CHECK(abs(rel_of(exact, quad)) < Real("1e-10"));
    CHECK(quad.regime == Regime::large_exponent);

    CHECK(trivariate_estimate(q, EstimateMethod::auto_select).method == Method::gaussian);

    // small-exponent query: k^t/t! = 500000 against exact 499490
    TrivariateQuery s{10, 1000, 2};
    Real srel = rel_of(trivariate_exact(s), trivariate_estimate(s, EstimateMethod::small_limit));
    CHECK(srel > Real("0.0008"));
    CHECK(srel < Real("0.0013"));
    CHECK(trivariate_estimate(s).method == Method::small_limit);
}

TEST_CASE("trivariate system plumbing") {
    CHECK(trivariate_system().m() == 2);
    CHECK(trivariate_norm().kind == NormKind::weighted_l1);
    ExponentVector n = trivariate_exponents({10, 1000, 2});
    CHECK(n.n == std::vector<long>{2, 980, 10});
}

TEST_CASE("planar core exact: frozen regression values") {
    CHECK(planar_core_exact({3, 2}).value == 6);
    CHECK(planar_core_exact({5, 2}).value == 170);
    CHECK(planar_core_exact({8, 3}).value == 9568);
    CHECK(planar_core_exact({10, 4}).value == 100340);
    CHECK(planar_core_exact({12, 5}).value == 1059336);
    CHECK(planar_core_exact({15, 15}).value == 1);
    CHECK(planar_core_exact({20, 7}).value.str() == "181077730720");
    CHECK(planar_core_exact({30, 10}).value.str() == "406108683943668108");
    CHECK(planar_core_exact({40, 13}).value.str() == "996805448424028947105280");
    CHECK(planar_core_exact({50, 17}).value.str() == "706937310017387404456859693300");

    CHECK_THROWS_AS(planar_core_exact({2, 3}), ConstraintViolation);  // k > n
    CHECK_THROWS_AS(planar_core_exact({5, 0}), ConstraintViolation);  // k < 1
}

TEST_CASE("planar core estimates: route selection and accuracy") {
    PlanarCoreQuery q{300, 30};
    BigCoefficient exact = planar_core_exact(q);

    AsymptoticEstimate g = planar_core_estimate(q, EstimateMethod::gaussian);
    Real grel = rel_of(exact, g);
    CHECK(grel > Real("0.015"));
    CHECK(grel < Real("0.03"));
    CHECK(planar_core_estimate(q).method == Method::gaussian);

    AsymptoticEstimate quad = planar_core_estimate(q, EstimateMethod::quadrature);
    CHECK(abs(rel_of(exact, quad)) < Real("1e-8"));

    // coalescing window: gaussian refuses, auto falls back to quadrature
    PlanarCoreQuery cw{300, 100};
    CHECK_THROWS_AS(planar_core_estimate(cw, EstimateMethod::gaussian), CoalescenceError);
    AsymptoticEstimate fb = planar_core_estimate(cw);
    CHECK(fb.method == Method::quadrature);
    CHECK(abs(rel_of(planar_core_exact(cw), fb)) < Real("1e-8"));

    // boundary k = n: T(n,n) = 1 via the small-exponent limit, exactly
    AsymptoticEstimate one = planar_core_estimate({15, 15});
    CHECK(one.method == Method::small_limit);
    CHECK(one.sign == 1);
    CHECK(abs(one.log_abs) < Real("1e-25"));
}

TEST_CASE("coalescence diagnostic: window coordinates") {
    CoalescenceDiagnostic center = coalescence_diagnostic({300, 100});
    CHECK(abs(center.c2) < Real("1e-25"));       // k = n/3 exactly
    CHECK(abs(center.window_coord) < Real("1e-25"));

    CoalescenceDiagnostic off = coalescence_diagnostic({300, 99});
    CHECK(near(off.window_coord, Real(-1) / pow(Real(300), Real(2) / 3), Real("1e-25")));
    // c2 against the closed form d1 Z/(1+Z)^2 - d2 Z/(1-Z)^2 over 2 at the
    // window direction (201/900, 1, 11/100)
    Direction wd = make_direction({Real(201) / 900, Real(1), Real(11) / 100}, NormSpec::linf());
    Real Z = z_formula_planar(wd).z;
    Real closed = (Z / ((1 + Z) * (1 + Z)) - (Real(11) / 100) * Z / ((1 - Z) * (1 - Z))) / 2;
    CHECK(near(off.c2, closed, Real("1e-25")));
    CHECK(abs(off.c2) < Real("1e-2"));  // still near the window: quadratic term tiny
}

TEST_CASE("integer sequences: offsets, gaps, and validation") {
    std::string path = write_temp("seq.txt", "offset: 2\n# comment\n5\n\n7\n11\n");
    IntegerSequence s = load_sequence(path);
    CHECK(s.offset == 2);
    CHECK(s.has(2));
    CHECK(s.has(4));
    CHECK_FALSE(s.has(1));
    CHECK_FALSE(s.has(5));
    CHECK(s.at(3) == 7);
    CHECK_THROWS_AS(s.at(10), DomainError);
    std::remove(path.c_str());

    std::string bad = write_temp("seq_bad.txt", "offset: 1\nnot-a-number\n");
    CHECK_THROWS_AS(load_sequence(bad), ConstraintViolation);
    std::remove(bad.c_str());

    std::string empty = write_temp("seq_empty.txt", "# nothing\n");
    CHECK_THROWS_AS(load_sequence(empty), ConstraintViolation);
    std::remove(empty.c_str());
}

TEST_CASE("planar core probability assembles user-supplied enumeration data") {
    IntegerSequence M{3, {BigInt(4)}};   // M_3 = 4
    IntegerSequence C{2, {BigInt(5)}};   // C_2 = 5
    // p = (k C_k)/(n M_n) T(n,k) = (2*5)/(3*4) * 6 = 5
    CHECK(planar_core_probability({3, 2}, M, C) == 5);

    IntegerSequence Mzero{3, {BigInt(0)}};
    CHECK_THROWS_AS(planar_core_probability({3, 2}, Mzero, C), DomainError);
    IntegerSequence Mgap{7, {BigInt(4)}};
    CHECK_THROWS_AS(planar_core_probability({3, 2}, Mgap, C), DomainError);
}
