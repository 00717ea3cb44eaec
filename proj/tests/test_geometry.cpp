#include "tlo/geometry.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace tlo;

TEST_CASE("hull of a square with interior and collinear points") {
  const ConvexPolygon h = convex_hull({{1, 1}, {0, 0}, {1, 0}, {0, 1}, {0.5, 0.5}, {0.5, 0}, {0, 0}});
  REQUIRE(h.vertices.size() == 4);
  CHECK(h.vertices[0] == Vec2(0, 0));
  CHECK(h.vertices[1] == Vec2(1, 0));
  CHECK(h.vertices[2] == Vec2(1, 1));
  CHECK(h.vertices[3] == Vec2(0, 1));
  CHECK(h.area() == doctest::Approx(1.0));
  CHECK(is_strictly_convex_ccw(h));
}

TEST_CASE("degenerate hulls") {
  CHECK(convex_hull({}).empty());
  const ConvexPolygon p = convex_hull({{2, 3}, {2, 3}, {2, 3}});
  CHECK(p.is_point());
  const ConvexPolygon s = convex_hull({{0, 0}, {1, 1}, {2, 2}, {0.5, 0.5}});
  REQUIRE(s.is_segment());
  CHECK(s.vertices[0] == Vec2(0, 0));
  CHECK(s.vertices[1] == Vec2(2, 2));
  CHECK(s.area() == 0.0);
}

TEST_CASE("random hulls are strictly convex, contain their inputs and are order independent") {
  test::Rng rng(51);
  for (int t = 0; t < 100; ++t) {
    std::vector<Vec2> pts(static_cast<std::size_t>(rng.integer(3, 40)));
    for (auto& p : pts) p = Vec2(rng.uniform(-5, 5), rng.uniform(-5, 5));
    const ConvexPolygon h = convex_hull(pts);
    CHECK(is_strictly_convex_ccw(h));
    for (const auto& p : pts) CHECK(inside_margin(h, p) >= -1e-12);
    // starts at the lexicographically smallest vertex
    CHECK(std::none_of(h.vertices.begin(), h.vertices.end(), [&](const Vec2& v) {
      return v.x() < h.vertices[0].x() || (v.x() == h.vertices[0].x() && v.y() < h.vertices[0].y());
    }));
    std::shuffle(pts.begin(), pts.end(), rng.engine());
    const ConvexPolygon h2 = convex_hull(pts);
    CHECK(h2.vertices == h.vertices);
  }
}

TEST_CASE("inside margin") {
  const ConvexPolygon sq = convex_hull({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  CHECK(inside_margin(sq, {0, 0}) > 0.0);
  CHECK(inside_margin(sq, {1, 0}) == doctest::Approx(0.0));
  CHECK(inside_margin(sq, {2, 0}) < 0.0);
}
