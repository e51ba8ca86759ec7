/*
 * Expression-tree construction and normalization: flattening, collection,
 * exact numeric folding, power rules sound for principal branches, exact
 * special values, substitution, ordering, and render round-trips.
 */
#include <catch2/catch_amalgamated.hpp>

#include "liecanon/expr.hpp"
#include "liecanon/parse.hpp"

using namespace liecanon;

namespace {
const ExprP x = sym("x");
const ExprP y = sym("y");
const ExprP u = sym("u");
const ExprP v = sym("v");
}  // namespace

TEST_CASE("sums collect like terms", "[expr]") {
  REQUIRE(equal(add(x, x), mul(num(2L), x)));
  REQUIRE(equal(add(x, y), add(y, x)));
  REQUIRE(is_zero(sub(add(x, y), add(x, y))));
  REQUIRE(is_zero(add(x, neg(x))));
  REQUIRE(equal(add(add(x, y), add(x, neg(y))), mul(num(2L), x)));
  REQUIRE(equal(add(num(2L), num(3L)), num(5L)));
  SECTION("numeric coefficient distributes over a bare sum") {
    REQUIRE(equal(mul(num(2L), add(x, y)), add(mul(num(2L), x), mul(num(2L), y))));
    REQUIRE(is_zero(sub(mul(num(3L), add(x, y)), mul(num(3L), add(y, x)))));
  }
}

TEST_CASE("products collect like bases", "[expr]") {
  REQUIRE(equal(mul(x, x), pow(x, 2L)));
  REQUIRE(is_one(mul(x, pow(x, -1L))));
  REQUIRE(equal(mul(pow(x, Rational(1, 2)), pow(x, Rational(3, 2))), pow(x, 2L)));
  REQUIRE(equal(mul(x, y), mul(y, x)));
  REQUIRE(equal(mul(sqrt_of(x), sqrt_of(x)), x));
  REQUIRE(is_zero(mul(x, num(0L))));
  REQUIRE(equal(mul(num(2L), num(3L)), num(6L)));
}

TEST_CASE("power normalization", "[expr]") {
  SECTION("numeric folding") {
    REQUIRE(equal(pow(num(2L), 10L), num(1024L)));
    REQUIRE(equal(pow(frac(2, 3), -2L), frac(9, 4)));
    REQUIRE(is_one(pow(x, 0L)));
    REQUIRE(equal(pow(x, 1L), x));
  }
  SECTION("radical extraction of exact power parts") {
    REQUIRE(equal(sqrt_of(num(4L)), num(2L)));
    REQUIRE(equal(sqrt_of(num(8L)), mul(num(2L), sqrt_of(num(2L)))));
    REQUIRE(equal(sqrt_of(frac(9, 2)), mul(num(3L), pow(num(2L), Rational(-1, 2)))));
    REQUIRE(equal(pow(num(27L), Rational(1, 3)), num(3L)));
    REQUIRE(equal(pow(num(2L), Rational(7, 2)),  // integer part splits off
                  mul(num(8L), sqrt_of(num(2L)))));
  }
  SECTION("negative bases keep a principal (-1)-factor") {
    REQUIRE(equal(sqrt_of(num(-4L)), mul(num(2L), sqrt_of(num(-1L)))));
    // (-1)^e has period 2 in the exponent
    REQUIRE(equal(pow(num(-1L), Rational(7, 2)), pow(num(-1L), Rational(3, 2))));
    REQUIRE(is_one(pow(num(-1L), 2L)));
    REQUIRE(equal(pow(num(-1L), 3L), num(-1L)));
  }
  SECTION("integer exponents combine and distribute") {
    REQUIRE(equal(pow(pow(x, 2L), 3L), pow(x, 6L)));
    REQUIRE(equal(pow(sqrt_of(x), 2L), x));
    REQUIRE(equal(pow(mul(x, y), 2L), mul(pow(x, 2L), pow(y, 2L))));
    // non-integer outer exponents must NOT combine: (x^2)^(1/2) != x
    ExprP e = pow(pow(x, 2L), Rational(1, 2));
    REQUIRE(e->kind == Kind::Pow);
    REQUIRE(equal(e->kids[0], pow(x, 2L)));
  }
  SECTION("positive numeric coefficients pull out of fractional powers") {
    REQUIRE(equal(sqrt_of(mul(num(4L), x)), mul(num(2L), sqrt_of(x))));
    // negative coefficient stays under the radical
    ExprP e = sqrt_of(mul(num(-4L), x));
    REQUIRE(e->kind == Kind::Pow);
  }
}

TEST_CASE("exponential normalization", "[expr]") {
  REQUIRE(is_one(fun(Fn::Exp, num(0L))));
  REQUIRE(equal(fun(Fn::Exp, add(x, y)), mul(fun(Fn::Exp, x), fun(Fn::Exp, y))));
  REQUIRE(equal(fun(Fn::Exp, mul(num(2L), x)), pow(fun(Fn::Exp, x), 2L)));
  REQUIRE(equal(fun(Fn::Exp, fun(Fn::Ln, x)), x));
  REQUIRE(equal(fun(Fn::Exp, mul(num(2L), fun(Fn::Ln, x))), pow(x, 2L)));
  SECTION("exp atoms cancel exactly") {
    REQUIRE(is_one(mul(fun(Fn::Exp, x), fun(Fn::Exp, neg(x)))));
    REQUIRE(equal(mul(fun(Fn::Exp, num(2L)), fun(Fn::Exp, num(3L))),
                  fun(Fn::Exp, num(5L))));
  }
  SECTION("e^s lives on the single atom exp(1)") {
    REQUIRE(equal(pow(fun(Fn::Exp, num(1L)), x), fun(Fn::Exp, x)));
    REQUIRE(equal(fun(Fn::Ln, fun(Fn::Exp, num(3L))), num(3L)));
  }
}

TEST_CASE("logarithm and inverse-tangent special values", "[expr]") {
  REQUIRE(is_zero(fun(Fn::Ln, num(1L))));
  REQUIRE(is_one(fun(Fn::Ln, fun(Fn::Exp, num(1L)))));
  REQUIRE(is_zero(fun(Fn::Arctan, num(0L))));
  REQUIRE(equal(fun(Fn::Arctan, num(1L)), mul(frac(1, 4), pi())));
  REQUIRE(equal(fun(Fn::Arctan, neg(x)), neg(fun(Fn::Arctan, x))));
}

TEST_CASE("trigonometric special values and parity", "[expr]") {
  SECTION("exact values on the pi/6, pi/4 grid") {
    REQUIRE(is_zero(fun(Fn::Sin, num(0L))));
    REQUIRE(is_one(fun(Fn::Cos, num(0L))));
    REQUIRE(is_one(fun(Fn::Sin, mul(frac(1, 2), pi()))));
    REQUIRE(equal(fun(Fn::Sin, mul(frac(1, 6), pi())), frac(1, 2)));
    REQUIRE(equal(fun(Fn::Cos, pi()), num(-1L)));
    REQUIRE(is_one(fun(Fn::Tan, mul(frac(1, 4), pi()))));
    REQUIRE(equal(fun(Fn::Cos, mul(frac(1, 3), pi())), frac(1, 2)));
    REQUIRE(equal(fun(Fn::Csc, mul(frac(1, 2), pi())), num(1L)));
    REQUIRE(is_zero(fun(Fn::Sin, mul(num(3L), pi()))));
  }
  SECTION("parity normalization") {
    REQUIRE(equal(fun(Fn::Sin, neg(x)), neg(fun(Fn::Sin, x))));
    REQUIRE(equal(fun(Fn::Cos, neg(x)), fun(Fn::Cos, x)));
    REQUIRE(equal(fun(Fn::Tan, mul(num(-2L), x)), neg(fun(Fn::Tan, mul(num(2L), x)))));
  }
  SECTION("singular points stay symbolic") {
    REQUIRE(fun(Fn::Cot, num(0L))->kind == Kind::Fun);
    REQUIRE(fun(Fn::Tan, mul(frac(1, 2), pi()))->kind == Kind::Fun);
  }
}

TEST_CASE("free variables and membership", "[expr]") {
  ExprP e = add(mul(u, pow(v, 2L)), fun(Fn::Exp, x));
  REQUIRE(free_vars(e) == std::vector<std::string>{"u", "v", "x"});
  REQUIRE(contains_sym(e, "v"));
  REQUIRE(!contains_sym(e, "y"));
  REQUIRE(free_vars(pi()).empty());
}

TEST_CASE("substitution", "[expr]") {
  SECTION("variable for expression") {
    ExprP e = parse("u+v^2");
    REQUIRE(equal(substitute(e, "v", parse("x+1")), parse("u+(x+1)^2")));
    REQUIRE(equal(substitute(e, "w", x), e));  // absent variable: unchanged
  }
  SECTION("simultaneous substitution swaps correctly") {
    ExprP e = parse("u*v");
    std::map<std::string, ExprP> swap{{"u", v}, {"v", u}};
    REQUIRE(equal(substitute(e, swap), e));
    ExprP d = parse("u-v");
    REQUIRE(equal(substitute(d, swap), neg(d)));
  }
  SECTION("substitution renormalizes") {
    ExprP e = parse("x+y");
    REQUIRE(is_zero(substitute(e, "y", neg(x))));
    REQUIRE(equal(substitute(parse("exp(x)*exp(y)"), "y", neg(x)), num(1L)));
  }
  SECTION("subtree replacement") {
    ExprP e = fun(Fn::Sin, add(x, y));
    REQUIRE(equal(substitute_subtree(e, add(x, y), u), fun(Fn::Sin, u)));
    // note: exp(x+y) would split into exp(x)*exp(y) at construction
    ExprP f = mul(add(x, y), fun(Fn::Cos, add(x, y)));
    REQUIRE(equal(substitute_subtree(f, add(x, y), u), mul(u, fun(Fn::Cos, u))));
  }
}

TEST_CASE("total order and hashing", "[expr]") {
  std::vector<ExprP> pool = {
      num(0L), num(2L), frac(-1, 2), pi(), x, y, fun(Fn::Sin, x),
      pow(x, 2L), mul(num(2L), x), add(x, y), fun(Fn::Exp, x),
      sqrt_of(num(2L)), mul(x, y)};
  SECTION("antisymmetry and identity") {
    for (const auto& a : pool)
      for (const auto& b : pool) {
        int ab = compare(a, b), ba = compare(b, a);
        REQUIRE((ab == 0) == (ba == 0));
        if (ab != 0) REQUIRE(((ab < 0) != (ba < 0)));
        REQUIRE((ab == 0) == equal(a, b));
      }
  }
  SECTION("structural equality implies equal hashes") {
    REQUIRE(add(x, y)->h == add(y, x)->h);
    REQUIRE(mul(x, x)->h == pow(x, 2L)->h);
    REQUIRE(parse("2*x + 3")->h == parse("3 + x + x")->h);
  }
}

TEST_CASE("render round-trips through the parser", "[expr]") {
  std::vector<ExprP> samples = {
      num(3L), frac(-3, 2), x, pi(),
      add(x, num(1L)),
      sub(mul(num(5L), u), v),
      mul(frac(-3, 2), x),
      pow(x, -1L),
      pow(x, Rational(3, 2)),
      pow(add(x, num(1L)), Rational(3, 2)),
      sqrt_of(num(2L)),
      sqrt_of(add(pow(x, 2L), num(1L))),
      div(num(1L), mul(x, add(x, num(1L)))),
      fun(Fn::Exp, mul(num(-2L), x)),
      fun(Fn::Exp, num(2L)),
      mul(fun(Fn::Exp, x), pow(y, -2L)),
      fun(Fn::Ln, div(x, y)),
      fun(Fn::Arctan, div(y, x)),
      add(mul(num(-1L), fun(Fn::Sin, x)), fun(Fn::Cos, mul(num(2L), x))),
      pow(pow(x, 2L), Rational(1, 2)),
      pow(num(-1L), Rational(1, 2)),
      mul(pow(num(-1L), Rational(1, 2)), x),
      sub(neg(x), div(pow(y, 2L), num(3L))),
      pow(x, add(y, num(2L))),
      pow(pow(x, y), num(2L)),
      div(add(x, num(-1L)), add(x, num(1L))),
  };
  for (const auto& e : samples) {
    std::string text = render(e);
    INFO(text);
    REQUIRE(equal(parse(text), e));
  }
}
