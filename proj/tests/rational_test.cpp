#include "placer/rational.hpp"

#include <doctest.h>

#include <stdexcept>

using placer::Rational;

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("42") == Rational(42));
  CHECK(Rational::parse("-0.25") == Rational(-1, 4));
  CHECK(Rational::parse("8/90") == Rational(4, 45));
  CHECK(Rational::parse("0.1") == Rational(1, 10));
  CHECK(Rational::parse(".5") == Rational(1, 2));
  CHECK(Rational::parse(" 3 ") == Rational(3));
  CHECK(Rational::parse("+7/2") == Rational(7, 2));
  CHECK(Rational::parse("-4/6") == Rational(-2, 3));

  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1e3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("a"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1.2.3"), std::invalid_argument);
  CHECK(!Rational::try_parse("nope").has_value());
}

TEST_CASE("rational arithmetic and comparison") {
  Rational a(1, 3);
  Rational b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK(a > b);
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(placer::min(a, b) == b);
  CHECK(placer::max(a, b) == a);
  CHECK_THROWS_AS(a / Rational(0), std::invalid_argument);
}

TEST_CASE("rational floor is exact, including negatives") {
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(6, 3).floor() == 2);
  CHECK(Rational(0).floor() == 0);
  // the binary-float trap: 1 / (1/10) must floor to 10
  CHECK((Rational(1) / Rational(1, 10)).floor() == 10);
}

TEST_CASE("rational to_string round-trips") {
  for (const char* text : {"0", "5", "-3", "0.25", "-1.125", "4/45", "-7/3"}) {
    Rational v = Rational::parse(text);
    CHECK(Rational::parse(v.to_string()) == v);
    CHECK(v.to_string() == text);  // canonical spelling
  }
  CHECK(Rational::parse("8/90").to_string() == "4/45");
  CHECK(Rational::parse("0.500").to_string() == "0.5");
}

TEST_CASE("rational from_double is the exact binary value") {
  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(3.0) == Rational(3));
  CHECK(Rational::from_double(-0.75) == Rational(-3, 4));
  // 0.1 as a double is not one tenth
  CHECK(Rational::from_double(0.1) != Rational(1, 10));
  CHECK(Rational::from_double(0.1).to_double() == 0.1);
  CHECK_THROWS_AS(Rational::from_double(1.0 / 0.0), std::invalid_argument);
}

TEST_CASE("rational overflow is detected, not wrapped") {
  Rational big(INT64_MAX / 2, 1);
  CHECK_THROWS_AS(big * Rational(4), std::overflow_error);
}
