/*
 * Immutable symbolic expression trees over exact rational scalars.
 *
 * Nodes: exact rational constants, the constant pi, variables, n-ary sums and
 * products, powers, and applications of {exp, ln, sin, cos, tan, cot, csc,
 * arctan, arccot}.  sqrt(u) is represented as u^(1/2).
 *
 * All construction goes through normalizing factories, which keep a canonical
 * form on the polynomial/rational fragment: sums and products are flattened,
 * numeric parts folded, like terms and like bases collected, children sorted
 * by a fixed total order.  Structurally equal normalized trees compare equal.
 *
 * Every rewrite performed here is sound for the principal-branch complex
 * semantics used by the evaluator:
 *   - z^a * z^b -> z^(a+b)      (same Log on both sides)
 *   - (z^a)^n  -> z^(a*n)       (integer n only)
 *   - exp(a+b) -> exp(a)exp(b); exp(c*t) -> exp(t)^c for rational c
 *     (exact for real-valued t; |Im t| <= pi in general)
 *   - (c*R)^s  -> c^s * R^s     (numeric c > 0 only)
 * Rewrites that can cross branch cuts live in the simplifier, not here.
 */
#pragma once

#include "liecanon/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace liecanon {

enum class Kind : std::uint8_t { Num, Pi, Sym, Add, Mul, Pow, Fun };

enum class Fn : std::uint8_t { Exp, Ln, Sin, Cos, Tan, Cot, Csc, Arctan, Arccot };

const char* fn_name(Fn f);

struct Expr;
using ExprP = std::shared_ptr<const Expr>;

struct Expr {
  Kind kind;
  Fn fn = Fn::Exp;                 // valid for Kind::Fun
  Rational num;                    // valid for Kind::Num
  std::string name;                // valid for Kind::Sym
  std::vector<ExprP> kids;         // Add/Mul: >= 2 children; Pow: {base, exponent}; Fun: {argument}
  std::vector<std::string> syms;   // sorted union of free variable names
  std::size_t h = 0;               // structural hash, fixed at construction
};

// ---- factories (normalizing) ------------------------------------------------
ExprP num(const Rational& r);
ExprP num(long n);
ExprP frac(long p, long q);
ExprP sym(const std::string& name);
ExprP pi();
ExprP add(std::vector<ExprP> kids);
ExprP add(const ExprP& a, const ExprP& b);
ExprP sub(const ExprP& a, const ExprP& b);
ExprP neg(const ExprP& a);
ExprP mul(std::vector<ExprP> kids);
ExprP mul(const ExprP& a, const ExprP& b);
ExprP mul(const ExprP& a, const ExprP& b, const ExprP& c);
ExprP div(const ExprP& a, const ExprP& b);
ExprP pow(const ExprP& base, const ExprP& exponent);
ExprP pow(const ExprP& base, long exponent);
ExprP pow(const ExprP& base, const Rational& exponent);
ExprP fun(Fn f, const ExprP& arg);
ExprP sqrt_of(const ExprP& a);

// ---- structure --------------------------------------------------------------
int compare(const ExprP& a, const ExprP& b);  // total order; <0, 0, >0
bool equal(const ExprP& a, const ExprP& b);

bool is_num(const ExprP& e);
bool is_zero(const ExprP& e);
bool is_one(const ExprP& e);
// Rational value if the node is a Num, else nullptr.
const Rational* as_num(const ExprP& e);
// Rational value if the whole tree is a rational constant (Num), else nullopt.
std::optional<Rational> rational_value(const ExprP& e);

bool contains_sym(const ExprP& e, const std::string& v);
const std::vector<std::string>& free_vars(const ExprP& e);
std::set<std::string> free_var_set(const ExprP& e);

// term -> (numeric coefficient, remaining factor); Num n -> (n, 1).
std::pair<Rational, ExprP> split_coeff(const ExprP& term);
// factor -> (base, exponent); non-Pow f -> (f, 1).
std::pair<ExprP, ExprP> split_pow(const ExprP& f);
// e viewed as a sum: its terms (singleton unless Kind::Add).
std::vector<ExprP> sum_terms(const ExprP& e);
// e viewed as a product: its factors (singleton unless Kind::Mul).
std::vector<ExprP> product_factors(const ExprP& e);

// ---- rewriting --------------------------------------------------------------
ExprP substitute(const ExprP& e, const std::string& var, const ExprP& val);
ExprP substitute(const ExprP& e, const std::map<std::string, ExprP>& subs);
// Replace every occurrence of `pattern` (structural equality) by `replacement`.
ExprP substitute_subtree(const ExprP& e, const ExprP& pattern, const ExprP& replacement);

// ---- rendering --------------------------------------------------------------
// Infix text that reparses to a structurally equal tree.
std::string render(const ExprP& e);

}  // namespace liecanon
