#include "doctest.h"
#include "util.hpp"

using namespace mptest;

TEST_CASE("poly basics: trim, degree, coeff") {
    CHECK(RationalPoly{}.is_zero());
    CHECK(RationalPoly{}.degree() == -1);
    RationalPoly p(std::vector<Rational>{Rational(1), Rational(2), Rational(0)});
    CHECK(p.degree() == 1);
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(1) == 2);
    CHECK(p.coeff(5) == 0);
    CHECK(RationalPoly::constant(Rational(0)).is_zero());
    CHECK(P({1, 1}).is_integral());
    CHECK(P({1, 1}).is_nonnegative());
    CHECK_FALSE(P({1, -1}).is_nonnegative());
}

TEST_CASE("derivative and evaluation agree across representations") {
    RationalPoly cube = poly_pow(P({1, 1}), 3, 10);  // (1+z)^3
    CHECK(cube == P({1, 3, 3, 1}));
    CHECK(cube.derivative() == P({3, 6, 3}));

    Rational x = parse_rational("1/3");
    Rational exact = cube.eval_rational(x);
    CHECK(exact == parse_rational("64/27"));
    CHECK(near(cube.eval_real(Real(1) / 3), Real(exact), Real("1e-35")));
    Cplx z{Real(1) / 3, Real(0)};
    CHECK(near(cube.eval(z), Cplx{Real(exact), Real(0)}, Real("1e-35")));
    CHECK(near(cube.eval(z, 1), Cplx{Real(parse_rational("16/3")), Real(0)}, Real("1e-35")));
    CHECK(near(cube.eval(z, 2), Cplx{Real(8), Real(0)}, Real("1e-35")));
}

TEST_CASE("vanishing order and shift") {
    RationalPoly p = P({0, 0, 2, 1});
    CHECK(p.vanishing_order() == 2);
    CHECK(p.shift_down(2) == P({2, 1}));
    CHECK(RationalPoly{}.vanishing_order() == 0);
}

TEST_CASE("poly_mul honors truncation") {
    RationalPoly sq = poly_mul(P({1, 1}), P({1, 1}), 1);
    CHECK(sq == P({1, 2}));
    CHECK(poly_mul(P({1, 1}), RationalPoly{}).is_zero());
}

TEST_CASE("poly_pow truncates like a power series") {
    RationalPoly p = poly_pow(P({1, 1}), 10, 4);
    CHECK(p.degree() == 4);
    CHECK(p.coeff(4) == 210);
    CHECK(p.coeff(0) == 1);
}

TEST_CASE("binomial spot values and out-of-range zeros") {
    CHECK(binomial(100, 50).value.str() == "100891344545564193334812497256");
    CHECK(binomial(0, 0).value == 1);
    CHECK(binomial(5, -1).sign == 0);
    CHECK(binomial(5, 7).sign == 0);
    CHECK(binomial(250, 3).value == 2573000);
    // log view is consistent with the exact value
    BigCoefficient b = binomial(100, 50);
    CHECK(near(b.log_abs, log(Real(b.value)), Real("1e-30")));
}

TEST_CASE("factorial") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(20).str() == "2432902008176640000");
}

TEST_CASE("coeff_of_product: integral lane vs binomial route") {
    // [z^50] (1+z)^100 = C(100,50)
    BigCoefficient c = coeff_of_product(50, {{P({1, 1}), 100}});
    CHECK(c.value == binomial(100, 50).value);
    CHECK(c.sign == 1);

    // [z^2] (1+z)^4 = 6
    CHECK(coeff_of_product(2, {{P({1, 1}), 4}}).value == 6);

    // negative target degree is exactly zero
    CHECK(coeff_of_product(-1, {{P({1, 1}), 4}}).sign == 0);

    // [z^5] (1+z)^3 (1+2z)^2 -- compare against direct expansion
    RationalPoly direct = poly_mul(poly_pow(P({1, 1}), 3, 5), poly_pow(P({1, 2}), 2, 5), 5);
    BigCoefficient via = coeff_of_product(5, {{P({1, 1}), 3}, {P({1, 2}), 2}});
    CHECK(via.value == direct.coeff(5));
}

TEST_CASE("coeff_of_product: rational coefficients and signs") {
    // [z^2] (1 + z/2)^4 = C(4,2)/4 = 3/2
    RationalPoly half(std::vector<Rational>{Rational(1), parse_rational("1/2")});
    CHECK(coeff_of_product(2, {{half, 4}}).value.str() == "3/2");

    // [z^1] (1-z)^3 = -3
    BigCoefficient neg = coeff_of_product(1, {{P({1, -1}), 3}});
    CHECK(neg.value == -3);
    CHECK(neg.sign == -1);
    CHECK(near(neg.log_abs, log(Real(3)), Real("1e-30")));
}
