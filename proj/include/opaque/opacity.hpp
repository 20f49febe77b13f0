#pragma once

#include <optional>
#include <string>

#include "opaque/geometry.hpp"

namespace opaque {

enum class Verdict {
  certified_opaque,  // every line meeting the domain provably meets a segment
  non_opaque,        // an explicit missing line was found and validated
  inconclusive,      // neither certificate succeeded at the final resolution
};

std::string to_string(Verdict v);

// Line { p : <p, u(theta)> = offset } in original scene coordinates,
// with theta normalized to [0, pi).
struct WitnessLine {
  double theta = 0.0;
  double offset = 0.0;
};

struct OpacityCertificate {
  Verdict verdict = Verdict::inconclusive;
  std::optional<WitnessLine> witness;  // present exactly when non_opaque
  int n_sweep = 0;                     // base sweep resolution
  int refinements_used = 0;            // refinement rounds actually run
  double slack = 0.0;                  // base-level drift slack R * delta / 2
  // Minimum over examined windows of (largest slack the window certifies at)
  // minus (the slack it was required to certify at); nonnegative when the
  // verdict is certified_opaque.  Joins through shared endpoints or window
  // domination are slack-free, so scenes held together by exact joints can
  // report large margins.  Capped at 64x the base slack.
  double min_margin = 0.0;
  long windows_checked = 0;
};

// Exact single-angle diagnostic: how much of the domain's projection is not
// covered by the segment projections, and the largest uncovered gap
// (offsets in original coordinates).
struct CoverageMargin {
  double uncovered_length = 0.0;
  std::optional<Interval> largest_gap;
};

CoverageMargin coverage_margin(const ConvexPolygon& poly,
                               const SegmentSet& segments, double theta);

// Certified opacity decision.  Sweeps theta over [0, pi) in n_sweep windows;
// each window is certified against worst-case projection drift, with exact
// shared-endpoint and dominated-track joins so that touching configurations
// certify.  Windows that fail are split in half up to max_refinements rounds.
// Candidate missing lines found along the way are only reported after exact
// validation through witness_check.
OpacityCertificate verify(const ConvexPolygon& poly, const SegmentSet& segments,
                          int n_sweep = 65536, int max_refinements = 4);

// True iff the line { <p, u(theta)> = offset } meets the closed domain and
// meets no segment.  Pure sign tests with an absolute tolerance of
// 1e-12 * max(1, scene coordinate magnitude); lines within tolerance of a
// segment count as hitting it.
bool witness_check(const ConvexPolygon& poly, const SegmentSet& segments,
                   double theta, double offset);

}  // namespace opaque
