/*
 * Structural simplification on top of the polynomial-ratio machinery.
 *
 * simplify(): branch-sound for real arguments.  Function arguments are
 * normalized bottom-up, ln(exp t) collapses to t (real-argument assumption),
 * exact sin^2+cos^2 pairs collect to 1, and the whole tree is rewritten as a
 * cancelled polynomial ratio.  Idempotent.
 *
 * aggressive_simplify(): additionally distributes fractional powers over
 * products, merges nested powers, and splits logarithms of products/powers.
 * These rewrites can cross branch cuts, so callers must certify results
 * independently (numeric equivalence, derivative check, ...).
 */
#pragma once

#include "liecanon/expr.hpp"

namespace liecanon {

ExprP simplify(const ExprP& e);
ExprP aggressive_simplify(const ExprP& e);

}  // namespace liecanon
