/*
 * Infix parser: grammar shape, precedence, associativity, reserved names,
 * and error reporting with byte offsets.
 */
#include <catch2/catch_amalgamated.hpp>

#include "liecanon/expr.hpp"
#include "liecanon/parse.hpp"

using namespace liecanon;

TEST_CASE("atoms and literals", "[parser]") {
  REQUIRE(equal(parse("42"), num(42L)));
  REQUIRE(equal(parse("x"), sym("x")));
  REQUIRE(equal(parse("u1"), sym("u1")));
  REQUIRE(equal(parse("pi"), pi()));
  REQUIRE(equal(parse("1/2"), frac(1, 2)));
  REQUIRE(equal(parse("-3/4"), frac(-3, 4)));
}

TEST_CASE("grammar shape of simple expressions", "[parser]") {
  SECTION("powers") {
    ExprP e = parse("v^2");
    REQUIRE(e->kind == Kind::Pow);
    REQUIRE(equal(e->kids[0], sym("v")));
    REQUIRE(equal(e->kids[1], num(2L)));
  }
  SECTION("linear combinations") {
    REQUIRE(equal(parse("(5*u-v)"), sub(mul(num(5L), sym("u")), sym("v"))));
  }
  SECTION("function application") {
    REQUIRE(equal(parse("exp(-u)"), fun(Fn::Exp, neg(sym("u")))));
    REQUIRE(equal(parse("arctan(y/x)"), fun(Fn::Arctan, div(sym("y"), sym("x")))));
    REQUIRE(equal(parse("sqrt(u^2+1)"), sqrt_of(add(pow(sym("u"), 2L), num(1L)))));
  }
}

TEST_CASE("precedence and associativity", "[parser]") {
  REQUIRE(equal(parse("2*x+3*y"),
                add(mul(num(2L), sym("x")), mul(num(3L), sym("y")))));
  REQUIRE(equal(parse("2+3*4"), num(14L)));
  REQUIRE(equal(parse("a-b-c"), sub(sub(sym("a"), sym("b")), sym("c"))));
  REQUIRE(equal(parse("a/b/c"), div(div(sym("a"), sym("b")), sym("c"))));
  SECTION("power binds tighter than unary minus") {
    REQUIRE(equal(parse("-x^2"), neg(pow(sym("x"), 2L))));
  }
  SECTION("power accepts a signed exponent") {
    REQUIRE(equal(parse("x^-2"), pow(sym("x"), -2L)));
  }
  SECTION("power is right-associative") {
    REQUIRE(equal(parse("x^2^3"), pow(sym("x"), 8L)));
    REQUIRE(equal(parse("x^y^2"), pow(sym("x"), pow(sym("y"), 2L))));
  }
  SECTION("exponent stops before '/'") {
    REQUIRE(equal(parse("x^1/2"), div(sym("x"), num(2L))));
    REQUIRE(equal(parse("x^(1/2)"), sqrt_of(sym("x"))));
  }
  SECTION("whitespace is insignificant") {
    REQUIRE(equal(parse("  u +\tv "), add(sym("u"), sym("v"))));
  }
}

TEST_CASE("parsed special values normalize", "[parser]") {
  REQUIRE(equal(parse("sin(pi/6)"), frac(1, 2)));
  REQUIRE(is_zero(parse("x - x")));
  REQUIRE(equal(parse("exp(2*x)"), pow(fun(Fn::Exp, sym("x")), 2L)));
}

TEST_CASE("parse errors carry byte offsets", "[parser]") {
  SECTION("unexpected end of input") {
    try {
      parse("x +");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      REQUIRE(e.offset == 3);
    }
  }
  SECTION("unknown function") {
    try {
      parse("foo(x)");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      REQUIRE(e.offset == 0);
      REQUIRE(std::string(e.what()).find("foo") != std::string::npos);
    }
  }
  SECTION("decimal literals rejected") {
    try {
      parse("2.5");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      REQUIRE(e.offset == 1);
    }
  }
  SECTION("trailing input") {
    try {
      parse("x y");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      REQUIRE(e.offset == 2);
    }
  }
  SECTION("unbalanced parentheses") {
    REQUIRE_THROWS_AS(parse("(x"), ParseError);
    REQUIRE_THROWS_AS(parse("sin(x"), ParseError);
    REQUIRE_THROWS_AS(parse(")"), ParseError);
  }
  SECTION("empty input") {
    REQUIRE_THROWS_AS(parse(""), ParseError);
    REQUIRE_THROWS_AS(parse("   "), ParseError);
  }
}
