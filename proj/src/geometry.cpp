#include "tlo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tlo {

double ConvexPolygon::area() const {
  double a = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) a += cross2(vertices[i], vertices[(i + 1) % vertices.size()]);
  return 0.5 * a;
}

double ConvexPolygon::scale() const {
  double s = 1.0;
  for (const auto& v : vertices) s = std::max({s, std::abs(v.x()), std::abs(v.y())});
  return s;
}

ConvexPolygon convex_hull(std::vector<Vec2> pts, double tol) {
  double scale = 1.0;
  for (const auto& p : pts) scale = std::max({scale, std::abs(p.x()), std::abs(p.y())});
  const double eps = tol * scale;

  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(), [&](const Vec2& a, const Vec2& b) { return (a - b).norm() <= eps; }),
            pts.end());
  if (pts.size() <= 1) return {pts};

  // o -> a -> b turns left by more than eps, measured as a's distance from chord o-b.
  auto left_turn = [&](const Vec2& o, const Vec2& a, const Vec2& b) {
    return cross2(a - o, b - o) > eps * (b - o).norm();
  };

  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && !left_turn(hull[k - 2], hull[k - 1], pts[i])) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && !left_turn(hull[k - 2], hull[k - 1], pts[i])) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() == 2 && (hull[0] - hull[1]).norm() <= eps) hull.resize(1);
  return {hull};
}

bool is_strictly_convex_ccw(const ConvexPolygon& poly, double tol) {
  const auto& v = poly.vertices;
  if (v.size() < 3) return true;
  const double eps = tol * poly.scale();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % v.size()];
    const Vec2& c = v[(i + 2) % v.size()];
    if (cross2(b - a, c - b) <= eps * (c - a).norm()) return false;
  }
  return true;
}

double inside_margin(const ConvexPolygon& poly, const Vec2& p) {
  const auto& v = poly.vertices;
  if (v.empty()) return -std::numeric_limits<double>::infinity();
  if (v.size() == 1) return -(p - v[0]).norm();
  if (v.size() == 2) {
    const Vec2 d = v[1] - v[0];
    const double t = std::clamp((p - v[0]).dot(d) / d.squaredNorm(), 0.0, 1.0);
    return -(p - (v[0] + t * d)).norm();
  }
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 e = v[(i + 1) % v.size()] - v[i];
    margin = std::min(margin, cross2(e, p - v[i]) / e.norm());
  }
  return margin;
}

} // namespace tlo
