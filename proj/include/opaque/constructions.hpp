#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "opaque/geometry.hpp"

namespace opaque {

// A named domain plus candidate blocking set, with optional expectations
// carried along for reporting.
struct SceneSpec {
  std::string name;
  ConvexPolygon domain;
  SegmentSet segments;
  std::optional<double> expected_length;
  std::optional<bool> expected_opaque;
};

// The boundary edges of a polygon as a segment set (always a valid blocker).
SegmentSet boundary_segments(const ConvexPolygon& poly);

// Unit square blocked by its own boundary (length 4).
SceneSpec square_boundary();

// Unit square blocked by the conjectured optimum: half of one diagonal plus
// the Steiner tree of the other three corners; length sqrt(2) + sqrt(3/2).
SceneSpec square_conjectured();

// Equilateral triangle blocked by the Steiner tree of its corners
// (three legs meeting at 120 degrees); length side * sqrt(3).
SceneSpec triangle_tripod(double side = 1.0);

// Axis-aligned w-by-h rectangle blocked by both short sides plus one long
// side (total w + 2h when w >= h).
SceneSpec rectangle_three_sides(double w, double h);

// Regular 4*n_arc-gon inscribed in the unit circle (one vertex at angle 0),
// blocked by the polygon's lower half (the 2*n_arc edges below the x-axis,
// traversed vertex to vertex) plus vertical whiskers from (+-1, 0) up to
// (+-1, 1).  Length approaches pi + 2 as n_arc grows.
SceneSpec disk_half_circle_whiskers(int n_arc = 1024);

// Random convex polygon (convex hull of n_vertices uniform points in the
// unit disk) with n_segments random chords of its bounding box.  Streams are
// reproducible from the seed across platforms.
SceneSpec random_scene(std::uint64_t seed, int n_vertices, int n_segments);

}  // namespace opaque
