#include "tlo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tlo::oracle {

namespace {

constexpr double kSkipRow = 1e-12;

Mat2 checked_inverse_transpose(const Eigen::MatrixXd& J) {
  if (J.rows() != 2 || J.cols() != 2) throw std::invalid_argument("oracle requires a 2x2 joint Jacobian");
  const Mat2 Jt = J.transpose();
  const double det = Jt.determinant();
  if (std::abs(det) < 1e-12 * std::max(1.0, Jt.squaredNorm())) throw std::invalid_argument("joint Jacobian is singular");
  return Jt.inverse();
}

// Keeps the side where a.x <= b of a convex polygon (Sutherland-Hodgman).
std::vector<Vec2> clip(const std::vector<Vec2>& poly, const Vec2& a, double b) {
  std::vector<Vec2> out;
  if (poly.empty()) return out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % poly.size()];
    const double sp = a.dot(p) - b, sq = a.dot(q) - b;
    if (sp <= 0.0) out.push_back(p);
    if ((sp < 0.0 && sq > 0.0) || (sp > 0.0 && sq < 0.0)) out.push_back(p + (sp / (sp - sq)) * (q - p));
  }
  return out;
}

} // namespace

ConvexPolygon force_polytope_exact(const Eigen::MatrixXd& G, const Eigen::MatrixXd& J, const ActuatorLimits& limits) {
  const Mat2 JinvT = checked_inverse_transpose(J);
  if (G.cols() != 2) throw std::invalid_argument("oracle requires a two-joint muscle Jacobian");
  const double mid = 0.5 * (limits.f_min + limits.f_max);
  const double half = 0.5 * (limits.f_max - limits.f_min);

  Vec2 center = Vec2::Zero();
  std::vector<Vec2> gens;
  for (Eigen::Index m = 0; m < G.rows(); ++m) {
    const Vec2 torque_dir = -G.row(m).transpose();
    center += JinvT * (mid * torque_dir);
    Vec2 g = JinvT * (half * torque_dir);
    if (g.norm() < kGeometryTol) continue;
    if (g.y() < 0.0 || (g.y() == 0.0 && g.x() < 0.0)) g = -g; // upper half plane
    gens.push_back(g);
  }
  if (gens.empty()) return ConvexPolygon{{center}};

  std::sort(gens.begin(), gens.end(),
            [](const Vec2& a, const Vec2& b) { return std::atan2(a.y(), a.x()) < std::atan2(b.y(), b.x()); });

  // Walk the boundary: from the lowest vertex add 2g in angle order, then
  // subtract them again in the same order.
  Vec2 p = center;
  for (const auto& g : gens) p -= g;
  std::vector<Vec2> verts;
  verts.reserve(2 * gens.size());
  for (const auto& g : gens) {
    verts.push_back(p);
    p += 2.0 * g;
  }
  for (const auto& g : gens) {
    verts.push_back(p);
    p -= 2.0 * g;
  }
  return convex_hull(std::move(verts));
}

Region velocity_polytope_exact(const Eigen::MatrixXd& G, const Eigen::MatrixXd& J, const ActuatorLimits& limits) {
  if (J.rows() != 2 || J.cols() != 2 || G.cols() != 2)
    throw std::invalid_argument("oracle requires two-joint Jacobians");

  std::vector<Vec2> rows;
  for (Eigen::Index m = 0; m < G.rows(); ++m) {
    const Vec2 g = G.row(m).transpose();
    if (g.norm() >= kSkipRow) rows.push_back(g);
  }

  // Seed with the parallelogram of the most independent pair of slabs.
  std::size_t ia = 0, ib = 0;
  double best = 0.0;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = a + 1; b < rows.size(); ++b) {
      const double s = std::abs(cross2(rows[a], rows[b])) / (rows[a].norm() * rows[b].norm());
      if (s > best) {
        best = s;
        ia = a;
        ib = b;
      }
    }
  }
  if (best < kSkipRow) return {true, {}};

  Mat2 A;
  A.row(0) = rows[ia].transpose();
  A.row(1) = rows[ib].transpose();
  const Mat2 Ainv = A.inverse();
  std::vector<Vec2> poly;
  for (double u : {limits.ldot_min, limits.ldot_max})
    for (double v : {limits.ldot_min, limits.ldot_max}) poly.push_back(Ainv * Vec2(u, v));
  poly = convex_hull(poly).vertices;

  for (std::size_t m = 0; m < rows.size(); ++m) {
    if (m == ia || m == ib) continue;
    poly = clip(poly, rows[m], limits.ldot_max);
    poly = clip(poly, -rows[m], -limits.ldot_min);
  }

  std::vector<Vec2> mapped;
  mapped.reserve(poly.size());
  for (const auto& qd : poly) mapped.push_back(J * qd);
  return {false, convex_hull(std::move(mapped))};
}

double ray_h(const ConvexPolygon& poly, const Vec2& center, const Vec2& w) {
  const auto& v = poly.vertices;
  const double eps = kGeometryTol * std::max(poly.scale(), center.cwiseAbs().maxCoeff());
  if (v.size() < 3) {
    if (v.size() == 2) {
      // Only a ray running along the segment can leave the center.
      const Vec2 d = v[1] - v[0];
      if (inside_margin(poly, center) < -eps || std::abs(cross2(d, w)) > eps * d.norm() * w.norm()) return 0.0;
      const double t0 = (v[0] - center).dot(w) / w.squaredNorm();
      const double t1 = (v[1] - center).dot(w) / w.squaredNorm();
      return std::max({t0, t1, 0.0});
    }
    return 0.0;
  }
  if (inside_margin(poly, center) < -eps) return 0.0;

  double h = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 e = v[(i + 1) % v.size()] - v[i];
    const double rate = cross2(e, w);
    if (rate >= 0.0) continue; // moving along w never leaves through this edge
    h = std::min(h, cross2(e, center - v[i]) / -rate);
  }
  return std::max(h, 0.0);
}

double ray_h(const Region& region, const Vec2& center, const Vec2& w) {
  if (region.unbounded) return std::numeric_limits<double>::infinity();
  return ray_h(region.polygon, center, w);
}

} // namespace tlo::oracle
