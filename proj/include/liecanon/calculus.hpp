/*
 * Exact differentiation, principal-branch complex evaluation, and the
 * sampling-based equivalence oracle.
 *
 * Evaluation maps every node to complex<double> with principal branches
 * (std::log, std::pow, std::atan).  Singular points produce non-finite
 * values, which equivalence testing treats as "resample elsewhere".
 *
 * equivalent() draws seeded per-variable samples from [-2,-0.1] u [0.1,2]
 * (configurable one-sided windows for domain-restricted identities) and
 * checks |a - b| < tol * (1 + |a|) at every accepted point.  A rewrite that
 * is wrong on any branch cut fails here, because both sides are evaluated
 * with the same principal-branch semantics the kernel's rewrites preserve.
 */
#pragma once

#include "liecanon/expr.hpp"

#include <complex>
#include <cstdint>
#include <stdexcept>

namespace liecanon {

using Assignment = std::map<std::string, std::complex<double>>;

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Principal-branch evaluation; throws EvalError on unbound variables.
// Division by zero and other singularities yield non-finite values.
std::complex<double> eval_at(const ExprP& e, const Assignment& at);

ExprP differentiate(const ExprP& e, const std::string& var);

struct EquivOptions {
  double tol = 1e-8;
  int points = 50;
  std::uint64_t seed = 42;
  // Variables sample from [neg_lo, neg_hi] u [pos_lo, pos_hi];
  // use_negative = false restricts to the positive window (domain note:
  // one-sided checks certify the identity only on that half-line).
  double pos_lo = 0.1, pos_hi = 2.0;
  double neg_lo = -2.0, neg_hi = -0.1;
  bool use_negative = true;
};

// True when a - b vanishes structurally or |a - b| < tol*(1+|a|) at `points`
// independent seeded samples.  Non-finite evaluations are resampled; throws
// EvalError after 200*points failed attempts.
bool equivalent(const ExprP& a, const ExprP& b, const EquivOptions& opts);
bool equivalent(const ExprP& a, const ExprP& b, double tol = 1e-8,
                int points = 50, std::uint64_t seed = 42);

}  // namespace liecanon
