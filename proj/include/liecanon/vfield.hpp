/*
 * Planar vector fields X = xi(u,v) d/du + eta(u,v) d/dv, their Lie brackets,
 * prolongation to derivative coordinates, symmetry tests for scalar ODEs
 * v^(n) = omega(u, v, v', ..., v^(n-1)), and point transformations acting on
 * fields and equations.
 *
 * Derivative coordinates are named v1, v2, ... on top of the base pair (u, v);
 * the names are fixed by the Ode struct so expressions can refer to them.
 */
#pragma once

#include "liecanon/calculus.hpp"
#include "liecanon/expr.hpp"

#include <optional>
#include <string>
#include <vector>

namespace liecanon {

struct VectorField {
  ExprP xi;   // coefficient of d/du
  ExprP eta;  // coefficient of d/dv
  std::string u = "u";
  std::string v = "v";
};

// v^(order) = rhs(u, v, v1, ..., v_{order-1}); vk names are v1, v2, ...
struct Ode {
  int order = 1;
  ExprP rhs;
  std::string u = "u";
  std::string v = "v";
  std::string deriv_name(int k) const { return v + std::to_string(k); }
};

// Invertible change of variables (u,v) -> (x,y) given by x = x(u,v), y = y(u,v).
struct PointTransformation {
  ExprP x;
  ExprP y;
  std::string u = "u";
  std::string v = "v";
  std::string xname = "x";
  std::string yname = "y";
};

// Lie bracket [a, b] = a b - b a as a vector field in the same coordinates.
VectorField commutator(const VectorField& a, const VectorField& b);

bool same_field(const VectorField& a, const VectorField& b, double tol = 1e-8);

// Dimension of the span of the fields' coefficient matrix at generic points
// (sampled; 30 seeded points, majority value).
int generic_rank(const std::vector<VectorField>& fields, std::uint64_t seed = 42);

// Coefficients of the prolongation of X to (u, v, v1, ..., vn):
// [xi, eta, zeta1, ..., zeta_n].
std::vector<ExprP> prolong(const VectorField& x, int n);

bool is_symmetry(const VectorField& x, const Ode& ode, const EquivOptions& opts = {});

// Apply (u,v) -> (x,y) to a field: the pushforward coefficients in (x,y),
// with the old coordinates eliminated through the inverse map
// u = iu(x,y), v = iv(x,y).
VectorField push_through(const VectorField& f, const PointTransformation& t, const ExprP& iu,
                         const ExprP& iv);

// Rewrite the ODE in the new coordinates; empty when the transformed equation
// cannot be solved for the top derivative symbolically.
std::optional<Ode> transform_ode(const Ode& ode, const PointTransformation& t, const ExprP& iu,
                                 const ExprP& iv);

// Check that `t` maps `ode` onto `target` and each `field` onto the expected
// image field, all numerically.
bool satisfies_correspondence(const Ode& ode, const std::vector<VectorField>& fields,
                              const PointTransformation& t, const ExprP& iu, const ExprP& iv,
                              const Ode& target, const std::vector<VectorField>& images,
                              const EquivOptions& opts = {});

}  // namespace liecanon
