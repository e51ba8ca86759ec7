/*
 * Sparse multivariate Laurent-style polynomial view of expressions.
 *
 * A monomial is a product of atom^exponent with rational exponents; atoms are
 * opaque subexpressions (variables, pi, function applications, sums under a
 * fractional power, numeric radical bases, powers with symbolic exponents).
 * A polynomial maps monomials to rational coefficients.  Expressions convert
 * to num/den polynomial ratios; cancellation removes numeric content, common
 * monomial factors, and exact multivariate quotients (no general polynomial
 * GCD: a ratio that needs one stays unreduced, which downstream code treats
 * as "no simplification found" rather than an error).
 *
 * Safe mode performs only branch-sound decompositions.  Aggressive mode also
 * distributes fractional powers over products, merges nested powers, and
 * splits logarithms: callers must certify results independently.
 */
#pragma once

#include "liecanon/expr.hpp"

#include <optional>

namespace liecanon {

struct Mono {
  // sorted by expression order, distinct atoms, nonzero exponents
  std::vector<std::pair<ExprP, Rational>> p;
};

int mono_cmp(const Mono& a, const Mono& b);  // graded, then lexicographic
bool mono_eq(const Mono& a, const Mono& b);
Mono mono_mul(const Mono& a, const Mono& b);
// a/b when every atom of b appears in a with an exponent at least as large
std::optional<Mono> mono_div(const Mono& a, const Mono& b);

struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const { return mono_cmp(a, b) < 0; }
};

struct Poly {
  std::map<Mono, Rational, MonoLess> t;
  bool zero() const { return t.empty(); }
};

Poly poly_const(const Rational& c);
// p += c*m, renormalizing the monomial through the expression constructors
void poly_add_term(Poly& p, const Rational& c, Mono m);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_neg(const Poly& a);
Poly poly_scale(const Poly& a, const Rational& c);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_pow(const Poly& a, long n);  // n >= 0
bool poly_equal(const Poly& a, const Poly& b);

// Exact quotient a/b, or nullopt when b does not divide a.
std::optional<Poly> poly_divide(const Poly& a, const Poly& b);

struct RatPoly {
  Poly num, den;
};

enum class PolyMode { Safe, Aggressive };

// e as num/den (den a polynomial, not identically zero).
RatPoly to_ratio(const ExprP& e, PolyMode mode = PolyMode::Safe);

// to_ratio + cancellation.
RatPoly ratio_normalized(const ExprP& e, PolyMode mode = PolyMode::Safe);

RatPoly ratio_cancel(RatPoly r);

ExprP from_poly(const Poly& p);
ExprP from_ratio(const RatPoly& r);

// Coefficient list of e as a polynomial in `var` (index = power); nullopt when
// e is not polynomial in var (var under a function, fractional/negative power,
// or in the denominator).
std::optional<std::vector<ExprP>> poly_coeffs(const ExprP& e, const std::string& var);

}  // namespace liecanon
