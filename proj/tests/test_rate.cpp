#include "doctest.h"

#include "crn/rate.hpp"
#include "crn/error.hpp"

using crn::Rate;

TEST_CASE("rate literals keep integers and fractions exact") {
  CHECK(crn::parse_rate("3").is_exact());
  CHECK(crn::parse_rate("1/4") == Rate::exact(1, 4));
  CHECK(crn::parse_rate(" 6/8 ").str() == "3/4");
  CHECK_FALSE(crn::parse_rate("0.25").is_exact());
  CHECK(crn::parse_rate("0.25") == Rate::exact(1, 4));
  CHECK(crn::parse_rate("5.3e-4").to_double() == doctest::Approx(5.3e-4));
  CHECK_THROWS_AS(crn::parse_rate("1/0"), crn::Error);
  CHECK_THROWS_AS(crn::parse_rate("abc"), crn::Error);
  CHECK_THROWS_AS(crn::parse_rate("inf"), crn::Error);
}

TEST_CASE("mixed arithmetic degrades to binary64") {
  Rate exact = Rate::exact(1, 3);
  CHECK((exact + exact).is_exact());
  CHECK((exact + exact) == Rate::exact(2, 3));
  Rate mixed = exact * Rate(3.0);
  CHECK_FALSE(mixed.is_exact());
  CHECK(mixed.to_double() == doctest::Approx(1.0));
  CHECK(Rate::exact(1, 2) < Rate(0.75));
}

TEST_CASE("double formatting round-trips through the parser") {
  for (double v : {0.9999, 1.0027, 5.3e-4, 1.0 / 3.0, 331.9268}) {
    Rate r(v);
    Rate back = crn::parse_rate(r.str());
    CHECK(back == r);
    CHECK(back.to_double() == v);
  }
}
