#include "opaque/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "opaque/errors.hpp"

namespace opaque {

namespace {

bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double max_abs_coordinate(const std::vector<Point2>& pts) {
  double m = 0.0;
  for (const Point2& p : pts) {
    m = std::max(m, std::max(std::fabs(p.x), std::fabs(p.y)));
  }
  return m;
}

}  // namespace

Point2 unit_direction(double theta) {
  return {std::cos(theta), std::sin(theta)};
}

double wrap_angle(double raw) {
  double a = std::fmod(raw, kTau);
  if (a < 0.0) a += kTau;
  if (a >= kTau) a = 0.0;  // guard against fmod returning exactly kTau-eps rounding
  return a;
}

double canonical_direction(double raw) {
  double a = std::fmod(raw, kPi);
  if (a < 0.0) a += kPi;
  if (a >= kPi) a = 0.0;
  return a;
}

Segment::Segment(Point2 a_, Point2 b_) : a(a_), b(b_) {
  if (!finite(a) || !finite(b)) {
    throw ValidationError("segment endpoint is not finite");
  }
  if (a.x == b.x && a.y == b.y) {
    throw ValidationError("segment has zero length");
  }
}

double Segment::angle() const {
  Point2 d = b - a;
  return canonical_direction(std::atan2(d.y, d.x));
}

Point2 Segment::unit_normal() const {
  Point2 d = b - a;
  double len = norm(d);
  return {-d.y / len, d.x / len};
}

double total_length(const SegmentSet& segments) {
  double sum = 0.0;
  for (const Segment& s : segments) sum += s.length();
  return sum;
}

ConvexPolygon::ConvexPolygon(std::vector<Point2> vertices) {
  if (vertices.size() < 3) {
    throw ValidationError("polygon needs at least 3 vertices");
  }
  for (const Point2& p : vertices) {
    if (!finite(p)) throw ValidationError("polygon vertex is not finite");
  }

  const double scale = std::max(1.0, max_abs_coordinate(vertices));
  const double dup_tol = 1e-14 * scale;

  // Drop consecutive (near-)duplicate vertices, including the wrap pair.
  std::vector<Point2> verts;
  verts.reserve(vertices.size());
  for (const Point2& p : vertices) {
    if (verts.empty() || distance(verts.back(), p) > dup_tol) {
      verts.push_back(p);
    }
  }
  while (verts.size() >= 2 && distance(verts.front(), verts.back()) <= dup_tol) {
    verts.pop_back();
  }
  if (verts.size() < 3) {
    throw ValidationError("polygon is degenerate after removing duplicate vertices");
  }

  // Merge consecutive collinear vertices; the relative tolerance compares the
  // cross product against the product of edge lengths (a bound on |sin| of
  // the turn angle).  A turn of ~pi (the edge doubling back) is rejected.
  bool changed = true;
  while (changed && verts.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < verts.size() && verts.size() >= 3; ++i) {
      const std::size_t n = verts.size();
      Point2 prev = verts[(i + n - 1) % n];
      Point2 cur = verts[i];
      Point2 next = verts[(i + 1) % n];
      Point2 e1 = cur - prev;
      Point2 e2 = next - cur;
      double c = cross(e1, e2);
      double straightness = 1e-12 * norm(e1) * norm(e2);
      if (std::fabs(c) <= straightness) {
        if (dot(e1, e2) <= 0.0) {
          throw ValidationError("polygon has a zero-area spike");
        }
        verts.erase(verts.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (verts.size() < 3) {
    throw ValidationError("polygon is degenerate after merging collinear vertices");
  }

  // Convexity and orientation: every turn must be a strict left turn.
  double area2 = 0.0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const std::size_t n = verts.size();
    Point2 prev = verts[(i + n - 1) % n];
    Point2 cur = verts[i];
    Point2 next = verts[(i + 1) % n];
    Point2 e1 = cur - prev;
    Point2 e2 = next - cur;
    double c = cross(e1, e2);
    if (c < -1e-12 * norm(e1) * norm(e2)) {
      double signed_area = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        signed_area += cross(verts[j], verts[(j + 1) % n]);
      }
      if (signed_area < 0.0) {
        throw ValidationError("polygon vertices must be counter-clockwise");
      }
      throw ValidationError("polygon is not convex");
    }
    area2 += cross(cur, next);
  }
  if (area2 <= 0.0) {
    throw ValidationError("polygon vertices must be counter-clockwise");
  }

  verts_ = std::move(verts);
  area_ = 0.5 * area2;

  double xmin = verts_[0].x, xmax = verts_[0].x;
  double ymin = verts_[0].y, ymax = verts_[0].y;
  for (std::size_t i = 0; i < verts_.size(); ++i) {
    const Point2& p = verts_[i];
    perimeter_ += distance(p, verts_[(i + 1) % verts_.size()]);
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  center_ = {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)};
  for (const Point2& p : verts_) {
    radius_ = std::max(radius_, distance(center_, p));
  }
}

Interval support_interval(const ConvexPolygon& poly, double theta) {
  Point2 u = unit_direction(theta);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const Point2& p : poly.vertices()) {
    double v = dot(p, u);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

double width(const ConvexPolygon& poly, double theta) {
  return support_interval(poly, theta).width();
}

Interval segment_projection(const Segment& seg, double theta) {
  Point2 u = unit_direction(theta);
  double pa = dot(seg.a, u);
  double pb = dot(seg.b, u);
  return {std::min(pa, pb), std::max(pa, pb)};
}

double perimeter(const ConvexPolygon& poly) { return poly.perimeter(); }

}  // namespace opaque
