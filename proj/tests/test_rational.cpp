/*
 * Exact rational scalar utilities: parsing, integer power/root extraction,
 * and continued-fraction reconstruction of rationals from doubles.
 */
#include <catch2/catch_amalgamated.hpp>

#include "liecanon/rational.hpp"

#include <cmath>

using namespace liecanon;

TEST_CASE("rational parsing and printing", "[rational]") {
  SECTION("round trips") {
    REQUIRE(rat_to_string(rat_from_string("5")) == "5");
    REQUIRE(rat_to_string(rat_from_string("-5")) == "-5");
    REQUIRE(rat_to_string(rat_from_string("2/3")) == "2/3");
    REQUIRE(rat_to_string(rat_from_string("-4/6")) == "-2/3");
  }
  SECTION("malformed input throws") {
    REQUIRE_THROWS_AS(rat_from_string(""), std::invalid_argument);
    REQUIRE_THROWS_AS(rat_from_string("1.5"), std::invalid_argument);
    REQUIRE_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
    REQUIRE_THROWS_AS(rat_from_string("a/b"), std::invalid_argument);
  }
}

TEST_CASE("integer predicates and conversion", "[rational]") {
  REQUIRE(rat_is_integer(Rational(4)));
  REQUIRE(!rat_is_integer(Rational(1, 2)));
  REQUIRE(rat_to_int(Rational(-7)) == -7);
  REQUIRE_THROWS(rat_to_int(Rational(1, 2)));
}

TEST_CASE("exact integer powers", "[rational]") {
  REQUIRE(rat_pow(Rational(2, 3), 3) == Rational(8, 27));
  REQUIRE(rat_pow(Rational(2, 3), -2) == Rational(9, 4));
  REQUIRE(rat_pow(Rational(5), 0) == 1);
  REQUIRE(rat_pow(Rational(-2), 3) == -8);
}

TEST_CASE("integer root and power-part extraction", "[rational]") {
  SECTION("exact roots") {
    REQUIRE(int_nth_root_exact(mpz_class(144), 2).value() == 12);
    REQUIRE(int_nth_root_exact(mpz_class(27), 3).value() == 3);
    REQUIRE(!int_nth_root_exact(mpz_class(145), 2).has_value());
    REQUIRE(!int_nth_root_exact(mpz_class(26), 3).has_value());
  }
  SECTION("largest n-th power dividing z") {
    // 72 = 2^3 * 3^2: square part 36 = 6^2 leaves 2; cube part 8 = 2^3 leaves 9.
    auto [s, sr] = int_nth_power_part(mpz_class(72), 2);
    REQUIRE(s == 6);
    REQUIRE(sr == 2);
    auto [c, cr] = int_nth_power_part(mpz_class(72), 3);
    REQUIRE(c == 2);
    REQUIRE(cr == 9);
    auto [p, pr] = int_nth_power_part(mpz_class(7), 5);
    REQUIRE(p == 1);
    REQUIRE(pr == 7);
  }
}

TEST_CASE("continued-fraction rationalization", "[rational]") {
  SECTION("recovers simple fractions from decimals") {
    REQUIRE(rationalize(0.5, 1000).value() == Rational(1, 2));
    REQUIRE(rationalize(1.0 / 3.0, 1000).value() == Rational(1, 3));
    REQUIRE(rationalize(-0.6, 1000).value() == Rational(-3, 5));
    REQUIRE(rationalize(2.0, 1000).value() == 2);
  }
  SECTION("denominator bound selects the right convergent") {
    // best approximation to pi with denominator <= 10 is 22/7
    auto r = rationalize(M_PI, 10, 0.01);
    REQUIRE(r.has_value());
    REQUIRE(*r == Rational(22, 7));
  }
  SECTION("out-of-tolerance values are rejected") {
    REQUIRE(!rationalize(M_PI, 10, 1e-9).has_value());
    REQUIRE(!rationalize(std::nan(""), 10).has_value());
  }
}
