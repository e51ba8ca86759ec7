/*
 * Exact linear algebra over the rationals: reduced row echelon form, linear
 * solves, and nullspace bases.  Small dense systems only (the structure
 * tensors and matching systems here are at most a handful of unknowns).
 */
#pragma once

#include "liecanon/rational.hpp"

#include <optional>
#include <vector>

namespace liecanon {

using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;

// In-place reduced row echelon form; returns the pivot column of each pivot row.
std::vector<int> rref(QMat& m);

int rank(QMat m);

// One solution of A x = b (free unknowns set to zero), or nullopt if inconsistent.
std::optional<QVec> solve_linear(QMat a, QVec b);

// Basis of { x : A x = 0 }.
std::vector<QVec> nullspace(QMat a);

}  // namespace liecanon
