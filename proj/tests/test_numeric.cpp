#include "doctest.h"
#include "pcx/numeric.hpp"

#include <cmath>

using namespace pcx;

TEST_CASE("parse_rational accepts fractions, integers and exact decimals") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("1e-2") == Rational(1, 100));
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("to_string round-trips") {
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(4)) == "4");
  CHECK(parse_rational(to_string(Rational(-5, 7))) == Rational(-5, 7));
}

TEST_CASE("s-analogs reduce to integers at s = 1 and match the sinh form") {
  for (long k = 0; k < 6; ++k) CHECK(s_analog(k, Rational(1)) == Rational(k));
  // [3]_2 = (8 - 1/8)/(2 - 1/2) = 21/4
  CHECK(s_analog(3, Rational(2)) == Rational(21, 4));
  CHECK(s_factorial(3, Rational(1)) == Rational(6));
  for (double s : {1.3, 2.0, 3.7})
    for (int k = 1; k < 5; ++k) {
      double expect = (std::pow(s, k) - std::pow(s, -k)) / (s - 1 / s);
      CHECK(s_analog(static_cast<double>(k), s) == doctest::Approx(expect));
    }
}

TEST_CASE("s_from_eps solves 1/[2]_s = 1/2 - eps") {
  for (double eps : {0.01, 0.1, 0.3, 0.45}) {
    double s = s_from_eps(eps);
    CHECK(1.0 / (s + 1.0 / s) == doctest::Approx(0.5 - eps));
  }
  CHECK_THROWS_AS(s_from_eps(0.5), Error);
  CHECK_THROWS_AS(s_from_eps(0.0), Error);
}

TEST_CASE("log_concave reports the first failing index") {
  int at = 0;
  CHECK(log_concave(std::vector<Rational>{1, 5, 6}, &at));
  CHECK(at == -1);
  std::vector<Rational> cp{Rational(1, 4), Rational(1, 4), Rational(1, 2), Rational(0)};
  CHECK_FALSE(log_concave(cp, &at));
  CHECK(at == 1);
  CHECK(log_concave(std::vector<BigInt>{1, 2, 1}));
}
