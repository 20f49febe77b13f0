#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opaque/geometry.hpp"
#include "opaque/measures.hpp"
#include "opaque/opacity.hpp"
#include "opaque/shadows.hpp"

namespace opaque {

// Residual of the first-moment identity  L - P/2 = (1/4) * integral(g - f):
// returns | (L - P/2) - integral_gap / 4 |.
double gap_identity_residual(double total_len, double domain_perimeter,
                       double integral_gap);

// Upper bound on the squared L2 shadow gap in terms of the length excess:
// integral (g-f)^2 <= 8 sqrt(L) (L - P/2)^{3/2}.  `conservative_rhs` is the
// sqrt(2)-weaker single-bump variant kept for cross-checks.  Throws
// InconsistentSceneError when the excess is negative beyond 1e-9 (impossible
// for genuinely opaque scenes).
struct GapEnergyBound {
  double rhs = 0.0;
  double conservative_rhs = 0.0;
  bool satisfied = false;
};

GapEnergyBound gap_energy_check(double total_len, double domain_perimeter,
                            double l2_gap);

// Stability certificate: the orientation measures of the blocking set and of
// the halved boundary are close in the negative-order norm whenever the
// length excess is small:
//   distance <= L^{1/4} / sqrt(2) * (L - P/2)^{3/4}.
// `lhs`/`lhs_tail` echo the truncated distance and its certified remainder;
// `satisfied` compares sqrt(lhs^2 + lhs_tail) against rhs + 1e-9.
struct StabilityCertificate {
  double lhs = 0.0;
  double lhs_tail = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

StabilityCertificate stability_certificate(const AngularMeasure& mu_segments,
                                         const AngularMeasure& mu_boundary,
                                         double total_len,
                                         double domain_perimeter,
                                         int ell_max = 256);

// Angular-mass concentration rows for the unit square: for each beta the
// mass of mu_segments on directions at least beta away from the axis
// directions is at most (L - 2) / (1 - cos beta).  The domain must be the
// unit square [0,1]^2 within 1e-9 (DomainMismatchError otherwise); betas
// must lie in (0, pi/4] (ParameterError); L below 2 - 1e-9 is impossible for
// opaque sets on the unit square (InconsistentSceneError).
struct ConcentrationRow {
  double beta = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

std::vector<ConcentrationRow> concentration_square(const ConvexPolygon& domain,
                                               const AngularMeasure& mu_segments,
                                               double total_len,
                                               const std::vector<double>& betas);

bool is_unit_square(const ConvexPolygon& poly, double tol = 1e-9);

// Second-moment line-space energy of a segment set: the double integral over
// ordered point pairs of |<n_x, y-x><y-x, n_y>| / |y-x|^3.  A single segment
// (or any collinear pair) contributes exactly zero; each unordered pair is
// integrated once by adaptive Gauss quadrature to 1e-6 relative accuracy and
// counted twice.
double crofton_energy(const SegmentSet& segments);

struct AuditConfig {
  int n_grid = 8192;
  int n_sweep = 65536;
  int max_refinements = 4;
  int ell_max = 256;
  // Pair integration is quadratic in the segment count; above this the
  // energy is skipped and marked as such in the report.
  int crofton_max_segments = 64;
  std::vector<double> betas = {kPi / 24.0, kPi / 12.0, kPi / 8.0,
                               kPi / 6.0,  5.0 * kPi / 24.0, kPi / 4.0};
};

// Everything the audit pipeline measures, flat enough to serialize as
// key = value lines.  Inequality checks are only applicable (and only count
// toward all_satisfied) when the scene was certified opaque.
struct AuditReport {
  std::string scene_name;
  int segment_count = 0;
  double length = 0.0;
  double perimeter = 0.0;
  double length_lower_bound = 0.0;  // perimeter / 2
  double length_excess = 0.0;    // length - perimeter / 2

  Verdict verdict = Verdict::inconclusive;
  std::optional<WitnessLine> witness;
  int n_sweep = 0;
  int refinements_used = 0;
  double slack = 0.0;
  double min_margin = 0.0;
  long windows_checked = 0;

  double integral_gap = 0.0;  // quadrature of g - f over the circle
  double gap_identity_residual = 0.0;
  bool gap_identity_ok = true;

  double l2_gap_quadrature = 0.0;
  double l2_gap_parseval = 0.0;
  double l2_gap_tail = 0.0;

  bool checks_applicable = false;
  GapEnergyBound gap_energy;
  StabilityCertificate stability;

  bool concentration_applicable = false;
  std::vector<ConcentrationRow> concentration;
  bool concentration_satisfied = true;

  double max_gap_value = 0.0;
  double max_gap_theta = 0.0;
  double max_gap_bound = 0.0;  // sqrt(4 L (L - P/2)), certified scenes only
  bool max_gap_ok = true;

  double lipschitz_f = 0.0;
  double lipschitz_g = 0.0;

  bool crofton_computed = false;
  double crofton = 0.0;

  AuditConfig config;
  bool all_satisfied = true;
};

// Run the full measurement pipeline over one scene.
AuditReport audit(const ConvexPolygon& domain, const SegmentSet& segments,
                  const std::string& scene_name = "scene",
                  const AuditConfig& config = {});

}  // namespace opaque
