/*
 * Antiderivative search.  Strategies: linearity, power rule, rational
 * functions via exact partial fractions, exponential tabular products,
 * logarithmic integration by parts, substitution over exp(s), u-substitution
 * over subexpressions, and a closed-form table for single function nodes.
 *
 * Every candidate is certified by differentiating it back and comparing
 * numerically against the integrand over several sampling windows; anything
 * that fails certification is reported as not integrable (empty result)
 * rather than returned unverified.
 */
#pragma once

#include "liecanon/expr.hpp"

#include <optional>
#include <string>

namespace liecanon {

std::optional<ExprP> integrate_pattern(const ExprP& f, const std::string& var);

}  // namespace liecanon
