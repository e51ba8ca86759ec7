/*
 * Text -> expression tree.  Grammar (no implicit multiplication):
 *
 *   sum     := product (('+'|'-') product)*
 *   product := unary (('*'|'/') unary)*
 *   unary   := '-' unary | power
 *   power   := atom ('^' unary)?            right-associative
 *   atom    := integer | 'pi' | name | name '(' sum ')' | '(' sum ')'
 *
 * Numeric literals are decimal integers; rationals are written p/q (plain
 * division, which folds to the same node).  'pi' is reserved.  sqrt(u) parses
 * as u^(1/2).  Errors carry the byte offset of the offending token.
 */
#pragma once

#include "liecanon/expr.hpp"

#include <stdexcept>

namespace liecanon {

struct ParseError : std::runtime_error {
  std::size_t offset;
  ParseError(const std::string& msg, std::size_t off);
};

ExprP parse(const std::string& text);

}  // namespace liecanon
