#pragma once

#include <cmath>
#include <vector>

namespace opaque {

inline constexpr double kPi = 3.14159265358979323846264338328;
inline constexpr double kTau = 2.0 * kPi;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }

// Direction vector u(theta) = (cos theta, sin theta).
Point2 unit_direction(double theta);

// Reduce an angle to the canonical direction range [0, pi).
double canonical_direction(double raw);

// Reduce an angle to [0, 2*pi).
double wrap_angle(double raw);

// Closed interval [lo, hi] on the real line (projection footprints).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double v, double tol = 0.0) const {
    return v >= lo - tol && v <= hi + tol;
  }
};

// Non-degenerate closed line segment.  Construction validates that both
// endpoints are finite and the length is strictly positive.
struct Segment {
  Point2 a;
  Point2 b;

  Segment(Point2 a_, Point2 b_);

  double length() const { return distance(a, b); }
  // Direction angle reduced to [0, pi); segments are unoriented.
  double angle() const;
  // Unit normal (left of a->b).
  Point2 unit_normal() const;
};

using SegmentSet = std::vector<Segment>;

double total_length(const SegmentSet& segments);

// Convex polygon with counter-clockwise vertices.  The constructor validates
// finiteness, convexity and orientation, merges consecutive collinear
// vertices, and rejects degenerate (zero-area) input.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return verts_; }
  double perimeter() const { return perimeter_; }
  double area() const { return area_; }
  // Center of the axis-aligned bounding box.
  Point2 bounding_box_center() const { return center_; }
  // Max distance from the bounding-box center to a vertex.
  double bounding_radius() const { return radius_; }

 private:
  std::vector<Point2> verts_;
  double perimeter_ = 0.0;
  double area_ = 0.0;
  double radius_ = 0.0;
  Point2 center_;
};

// Projection footprint of the polygon onto u(theta): [min, max] over vertices.
Interval support_interval(const ConvexPolygon& poly, double theta);

// Width of the support interval; equals the domain's shadow length.
double width(const ConvexPolygon& poly, double theta);

// Projection footprint of a segment onto u(theta).
Interval segment_projection(const Segment& seg, double theta);

double perimeter(const ConvexPolygon& poly);

}  // namespace opaque
