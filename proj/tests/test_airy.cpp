#include "doctest.h"
#include "util.hpp"

using namespace mptest;

// reference values: series definition of Ai evaluated at 40 digits
TEST_CASE("airy_ai: spot values across both branches") {
    CHECK(near(airy_ai(Real(0)), Real("0.3550280538878172392600631860041831763980"),
               Real("1e-15")));
    CHECK(near(airy_ai_prime(Real(0)), Real("-0.2588194037928067984051835601892039634791"),
               Real("1e-15")));
    // series side of the switch
    CHECK(near(airy_ai(Real(9) / 2), Real("3.302503235143089836587325900993362341338e-4"),
               Real("1e-12")));
    // asymptotic side
    CHECK(near(airy_ai(Real(10)), Real("1.104753255289868593355020565799224106877e-10"),
               Real("1e-18")));
    CHECK(near(airy_ai(Real(20)), Real("1.69167286867054031355356021250935132237e-27"),
               Real("1e-35")));
    // oscillatory negative axis stays on the series branch
    CHECK(near(airy_ai(Real(-5)), Real("0.3507610090241143197880163276967422214844"),
               Real("1e-11")));
    CHECK(near(airy_ai(Real(-15)), Real("0.2782174908708289295276215087712218827421"),
               Real("1e-10")));
    // first zero of Ai
    CHECK(abs(airy_ai(Real("-2.338107410459767038489197252446735440638"))) < Real("1e-10"));
}

TEST_CASE("airy_ai: branch switch at 4.5 is continuous") {
    Real lo = airy_ai(Real(9) / 2 - Real("1e-12"));
    Real hi = airy_ai(Real(9) / 2 + Real("1e-12"));
    // function change across the gap is ~1.4e-15; anything larger is a branch jump
    CHECK(abs(hi - lo) < Real("1e-10"));
}

TEST_CASE("airy domain gates") {
    CHECK_THROWS_AS(airy_ai(Real("-15.001")), DomainError);
    CHECK_THROWS_AS(airy_ai(Real("20.001")), DomainError);
    CHECK_THROWS_AS(airy_ai_prime(Real(25)), DomainError);
    CHECK_THROWS_AS(map_airy_density(Real("10.5")), DomainError);
    CHECK_THROWS_AS(map_airy_density(Real("-10.5")), DomainError);
}

TEST_CASE("map-Airy density: spot values") {
    CHECK(near(map_airy_density(Real(0)), Real("0.5176388075856135968103671203784079269582"),
               Real("1e-12")));
    CHECK(near(map_airy_density(Real(1)), Real("0.3023409268446515318931207128904821578918"),
               Real("1e-11")));
    CHECK(near(map_airy_density(Real(-8)), Real("7.780776778448743536484886704294693525716e-4"),
               Real("1e-12")));
    // left of the origin the density rides e^{-2x^3/3} ~ 3e4 on top of the
    // asymptotic Ai branch, so only the 1e-10 contract is available here
    CHECK(near(map_airy_density(Real("-2.5")), Real("0.01366272258199306063977425901484623172823"),
               Real("1e-10")));
    // the tails need Ai at x^2 = 100, past the public clamp; must stay finite
    Real right = map_airy_density(Real(10));
    CHECK(right >= 0);
    CHECK(right < Real("1e-200"));
    CHECK(map_airy_density(Real(-10)) > 0);
}

TEST_CASE("density at 0 equals -2 Ai'(0)") {
    CHECK(near(map_airy_density(Real(0)), -2 * airy_ai_prime(Real(0)), Real("1e-25")));
}
