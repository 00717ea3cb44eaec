#pragma once

#include "tlo/model.hpp"

#include <vector>

namespace tlo {

/// Convex polygon with counterclockwise vertices starting at the
/// lexicographically smallest one. One vertex is a point, two a segment.
struct ConvexPolygon {
  std::vector<Vec2> vertices;

  bool empty() const { return vertices.empty(); }
  bool is_point() const { return vertices.size() == 1; }
  bool is_segment() const { return vertices.size() == 2; }
  double area() const;
  /// Largest absolute coordinate, at least 1; scales geometric tolerances.
  double scale() const;
};

/// Absolute tolerance for geometric predicates, in the polygon's units.
inline constexpr double kGeometryTol = 1e-12;

/// Monotone-chain hull; drops duplicate and collinear points.
ConvexPolygon convex_hull(std::vector<Vec2> points, double tol = kGeometryTol);

/// True when every turn is a strict left turn (or the polygon has < 3 vertices).
bool is_strictly_convex_ccw(const ConvexPolygon& poly, double tol = kGeometryTol);

/// Signed distance-like margin of `p`: >= 0 inside or on the boundary.
double inside_margin(const ConvexPolygon& poly, const Vec2& p);

} // namespace tlo
