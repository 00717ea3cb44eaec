#pragma once

// Exact planar geometry for two-joint arms with a fixed muscle Jacobian.
// Independent of the LP path: the feasible force set is built as a zonotope
// and the feasible velocity set by halfplane intersection, and h is read off
// by intersecting a ray with the polygon boundary.

#include "tlo/feasibility.hpp"
#include "tlo/geometry.hpp"

#include <cstdint>

namespace tlo::oracle {

/// Image of the tension box under F = J^{-T}(-G^T f). Throws
/// std::invalid_argument for a singular or non-2x2 J.
ConvexPolygon force_polytope_exact(const Eigen::MatrixXd& G, const Eigen::MatrixXd& J, const ActuatorLimits& limits);

struct Region {
  bool unbounded = false;
  ConvexPolygon polygon; // valid when bounded
};

/// {J * qd : l_dot_min <= g_m . qd <= l_dot_max for all wires m}. Rows with
/// norm below 1e-12 impose nothing.
Region velocity_polytope_exact(const Eigen::MatrixXd& G, const Eigen::MatrixXd& J, const ActuatorLimits& limits);

/// Largest h >= 0 with center + h*w inside the polygon; 0 when the center is
/// outside.
double ray_h(const ConvexPolygon& poly, const Vec2& center, const Vec2& w);
/// As above; +infinity for an unbounded region.
double ray_h(const Region& region, const Vec2& center, const Vec2& w);

struct CrossCheck {
  int trials = 0;
  std::size_t comparisons = 0;
  std::size_t failures = 0;  // |h_LP - h_oracle| >= tol, or prune disagreement
  std::size_t pruned = 0;    // trials where some force LP was infeasible
  double max_diff = 0.0;
};

/// Random constant-arm designs with `wires` wires at random non-singular
/// joint states: compares every capped force and velocity h from the LP with
/// the geometric value capped the same way. When a force LP is infeasible the
/// trial instead checks that the center lies outside the zonotope.
CrossCheck cross_check(const Scenario& scenario, int wires, int trials, std::uint64_t seed, double tol);

} // namespace tlo::oracle
