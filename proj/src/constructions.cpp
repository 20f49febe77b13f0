#include "opaque/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "opaque/errors.hpp"
#include "opaque/rng.hpp"

namespace opaque {

namespace {

// Andrew monotone chain; returns a CCW hull without collinear points.
std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Point2 a, Point2 b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Point2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 &&
           cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) {
      --k;
    }
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t &&
           cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) {
      --k;
    }
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

SegmentSet boundary_segments(const ConvexPolygon& poly) {
  const std::vector<Point2>& v = poly.vertices();
  SegmentSet segs;
  segs.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    segs.emplace_back(v[i], v[(i + 1) % v.size()]);
  }
  return segs;
}

SceneSpec square_boundary() {
  ConvexPolygon square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  SegmentSet segs = boundary_segments(square);
  return {"square_boundary", std::move(square), std::move(segs), 4.0, true};
}

SceneSpec square_conjectured() {
  ConvexPolygon square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  // Steiner point of corners (0,0), (1,0), (0,1); legs meet at 120 degrees.
  const double t = (3.0 - std::sqrt(3.0)) / 6.0;
  SegmentSet segs;
  segs.emplace_back(Point2{0.5, 0.5}, Point2{1.0, 1.0});
  segs.emplace_back(Point2{0.0, 0.0}, Point2{t, t});
  segs.emplace_back(Point2{1.0, 0.0}, Point2{t, t});
  segs.emplace_back(Point2{0.0, 1.0}, Point2{t, t});
  double expected = std::sqrt(2.0) + std::sqrt(1.5);
  return {"square_conjectured", std::move(square), std::move(segs), expected,
          true};
}

SceneSpec triangle_tripod(double side) {
  if (!(side > 0.0) || !std::isfinite(side)) {
    throw ParameterError("triangle_tripod requires side > 0");
  }
  const double h = side * std::sqrt(3.0) / 2.0;
  ConvexPolygon tri({{0, 0}, {side, 0}, {0.5 * side, h}});
  // For an equilateral triangle the Fermat point is the centroid.
  const Point2 center{0.5 * side, side * std::sqrt(3.0) / 6.0};
  SegmentSet segs;
  segs.emplace_back(Point2{0, 0}, center);
  segs.emplace_back(Point2{side, 0}, center);
  segs.emplace_back(Point2{0.5 * side, h}, center);
  return {"triangle_tripod", std::move(tri), std::move(segs),
          side * std::sqrt(3.0), true};
}

SceneSpec rectangle_three_sides(double w, double h) {
  if (!(w > 0.0) || !(h > 0.0) || !std::isfinite(w) || !std::isfinite(h)) {
    throw ParameterError("rectangle_three_sides requires positive sides");
  }
  ConvexPolygon rect({{0, 0}, {w, 0}, {w, h}, {0, h}});
  SegmentSet segs;
  if (w >= h) {
    // Both short (vertical) sides plus the bottom long side.
    segs.emplace_back(Point2{0, 0}, Point2{0, h});
    segs.emplace_back(Point2{w, 0}, Point2{w, h});
    segs.emplace_back(Point2{0, 0}, Point2{w, 0});
  } else {
    segs.emplace_back(Point2{0, 0}, Point2{w, 0});
    segs.emplace_back(Point2{0, h}, Point2{w, h});
    segs.emplace_back(Point2{0, 0}, Point2{0, h});
  }
  return {"rectangle_three_sides", std::move(rect), std::move(segs),
          std::max(w, h) + 2.0 * std::min(w, h), true};
}

SceneSpec disk_half_circle_whiskers(int n_arc) {
  if (n_arc < 1) {
    throw ParameterError("disk_half_circle_whiskers requires n_arc >= 1");
  }
  const int n = 4 * n_arc;
  std::vector<Point2> verts(n);
  for (int k = 0; k < n; ++k) {
    double a = kTau * k / n;
    verts[k] = {std::cos(a), std::sin(a)};
  }
  ConvexPolygon poly(verts);
  SegmentSet segs;
  // Lower-half edges from (-1, 0) around the bottom back to (1, 0).
  for (int k = n / 2; k < n; ++k) {
    segs.emplace_back(verts[k], verts[(k + 1) % n]);
  }
  segs.emplace_back(Point2{1, 0}, Point2{1, 1});
  segs.emplace_back(Point2{-1, 0}, Point2{-1, 1});
  double expected =
      4.0 * n_arc * std::sin(kPi / (4.0 * n_arc)) + 2.0;
  return {"disk_half_circle_whiskers", std::move(poly), std::move(segs),
          expected, true};
}

SceneSpec random_scene(std::uint64_t seed, int n_vertices, int n_segments) {
  if (n_vertices < 3) {
    throw ParameterError("random_scene requires n_vertices >= 3");
  }
  if (n_segments < 0) {
    throw ParameterError("random_scene requires n_segments >= 0");
  }
  SplitMix64 rng(seed);
  auto disk_point = [&]() {
    for (;;) {
      double x = rng.uniform(-1.0, 1.0);
      double y = rng.uniform(-1.0, 1.0);
      if (x * x + y * y <= 1.0) return Point2{x, y};
    }
  };

  std::vector<Point2> hull;
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Point2> pts(static_cast<std::size_t>(n_vertices));
    for (Point2& p : pts) p = disk_point();
    hull = convex_hull(std::move(pts));
    if (hull.size() >= 3) break;
  }
  if (hull.size() < 3) {
    throw InconsistentSceneError("random_scene failed to build a hull");
  }
  ConvexPolygon poly(hull);

  double xmin = hull[0].x, xmax = hull[0].x;
  double ymin = hull[0].y, ymax = hull[0].y;
  for (const Point2& p : hull) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }

  SegmentSet segs;
  segs.reserve(static_cast<std::size_t>(n_segments));
  while (static_cast<int>(segs.size()) < n_segments) {
    Point2 a{rng.uniform(xmin, xmax), rng.uniform(ymin, ymax)};
    Point2 b{rng.uniform(xmin, xmax), rng.uniform(ymin, ymax)};
    if (distance(a, b) <= 1e-9) continue;
    segs.emplace_back(a, b);
  }
  return {"random", std::move(poly), std::move(segs), std::nullopt,
          std::nullopt};
}

}  // namespace opaque
