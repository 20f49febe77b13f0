#include "opaque/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "opaque/errors.hpp"

namespace opaque {

double gap_identity_residual(double total_len, double domain_perimeter,
                       double integral_gap) {
  return std::fabs((total_len - 0.5 * domain_perimeter) -
                   0.25 * integral_gap);
}

GapEnergyBound gap_energy_check(double total_len, double domain_perimeter,
                            double l2_gap) {
  double excess = total_len - 0.5 * domain_perimeter;
  if (excess < -1e-9) {
    throw InconsistentSceneError(
        "length excess is negative; scene cannot be opaque");
  }
  excess = std::max(excess, 0.0);
  GapEnergyBound b;
  b.rhs = 8.0 * std::sqrt(total_len) * std::pow(excess, 1.5);
  b.conservative_rhs = std::sqrt(2.0) * b.rhs;
  b.satisfied = l2_gap <= b.rhs + 1e-6 * (1.0 + b.rhs);
  return b;
}

StabilityCertificate stability_certificate(const AngularMeasure& mu_segments,
                                         const AngularMeasure& mu_boundary,
                                         double total_len,
                                         double domain_perimeter,
                                         int ell_max) {
  double excess = total_len - 0.5 * domain_perimeter;
  if (excess < -1e-9) {
    throw InconsistentSceneError(
        "length excess is negative; scene cannot be opaque");
  }
  excess = std::max(excess, 0.0);
  HMinus2Result d = h_minus2_distance(mu_segments, mu_boundary, ell_max);
  StabilityCertificate cert;
  cert.lhs = d.value;
  cert.lhs_tail = d.tail_bound;
  cert.rhs = std::pow(total_len, 0.25) / std::sqrt(2.0) * std::pow(excess, 0.75);
  double lhs_upper = std::sqrt(d.value * d.value + d.tail_bound);
  cert.satisfied = lhs_upper <= cert.rhs + 1e-9;
  return cert;
}

bool is_unit_square(const ConvexPolygon& poly, double tol) {
  const std::vector<Point2>& v = poly.vertices();
  if (v.size() != 4) return false;
  const Point2 ref[4] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  for (int rot = 0; rot < 4; ++rot) {
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i) {
      ok = distance(v[(rot + i) % 4], ref[i]) <= tol;
    }
    if (ok) return true;
  }
  return false;
}

std::vector<ConcentrationRow> concentration_square(
    const ConvexPolygon& domain, const AngularMeasure& mu_segments,
    double total_len, const std::vector<double>& betas) {
  if (!is_unit_square(domain)) {
    throw DomainMismatchError(
        "angular-mass concentration rows require the unit square domain");
  }
  if (total_len < 2.0 - 1e-9) {
    throw InconsistentSceneError(
        "blocking length below 2 is impossible for the unit square");
  }
  std::vector<ConcentrationRow> rows;
  rows.reserve(betas.size());
  for (double beta : betas) {
    if (!(beta > 0.0) || beta > kPi / 4.0 + 1e-15) {
      throw ParameterError("beta must lie in (0, pi/4]");
    }
    // Directions at least beta away (mod 2*pi) from {0, pi/2, pi, 3*pi/2}.
    std::vector<Interval> arcs;
    for (int q = 0; q < 4; ++q) {
      double start = q * kPi / 2.0 + beta;
      double end = (q + 1) * kPi / 2.0 - beta;
      arcs.push_back({start, end});
    }
    ConcentrationRow row;
    row.beta = beta;
    row.lhs = mu_segments.mass_on_arcs(arcs);
    row.rhs = (std::max(total_len, 2.0) - 2.0) / (1.0 - std::cos(beta));
    row.satisfied = row.lhs <= row.rhs + 1e-9 * (1.0 + row.rhs);
    rows.push_back(row);
  }
  return rows;
}

namespace {

// 32-point Gauss-Legendre rule on [0, 1], generated by Newton iteration on
// the Legendre recurrence (no table of constants to transcribe wrong).
struct GaussRule {
  std::array<double, 32> x{};
  std::array<double, 32> w{};
};

GaussRule make_gauss_rule() {
  GaussRule rule;
  const int n = 32;
  for (int i = 0; i < n; ++i) {
    // Chebyshev-like initial guess for the i-th root of P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double step = p1 / dp;
      x -= step;
      if (std::fabs(step) < 1e-15) break;
    }
    double weight = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.x[static_cast<std::size_t>(i)] = 0.5 * (x + 1.0);
    rule.w[static_cast<std::size_t>(i)] = 0.5 * weight;
  }
  return rule;
}

const GaussRule& gauss_rule() {
  static const GaussRule rule = make_gauss_rule();
  return rule;
}

struct PairGeometry {
  Point2 a1, d1;  // x(s) = a1 + s * d1, s in [0, 1]
  Point2 a2, d2;
  Point2 n1, n2;  // unit normals
  double jac;     // |d1| * |d2|
};

double cell_estimate(const PairGeometry& g, double s0, double s1, double t0,
                     double t1) {
  const GaussRule& rule = gauss_rule();
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    double s = s0 + (s1 - s0) * rule.x[i];
    Point2 x = g.a1 + s * g.d1;
    double row = 0.0;
    for (std::size_t j = 0; j < rule.x.size(); ++j) {
      double t = t0 + (t1 - t0) * rule.x[j];
      Point2 y = g.a2 + t * g.d2;
      Point2 r = y - x;
      double dist = norm(r);
      if (dist < 1e-12) continue;
      double num = std::fabs(dot(g.n1, r) * dot(r, g.n2));
      row += rule.w[j] * num / (dist * dist * dist);
    }
    sum += rule.w[i] * row;
  }
  return sum * (s1 - s0) * (t1 - t0) * g.jac;
}

double refine_cell(const PairGeometry& g, double s0, double s1, double t0,
                   double t1, double est, double tol, int depth) {
  double sm = 0.5 * (s0 + s1);
  double tm = 0.5 * (t0 + t1);
  double e00 = cell_estimate(g, s0, sm, t0, tm);
  double e01 = cell_estimate(g, s0, sm, tm, t1);
  double e10 = cell_estimate(g, sm, s1, t0, tm);
  double e11 = cell_estimate(g, sm, s1, tm, t1);
  double sum = e00 + e01 + e10 + e11;
  if (std::fabs(sum - est) <= tol || depth >= 24) return sum;
  double child_tol = 0.5 * tol;
  return refine_cell(g, s0, sm, t0, tm, e00, child_tol, depth + 1) +
         refine_cell(g, s0, sm, tm, t1, e01, child_tol, depth + 1) +
         refine_cell(g, sm, s1, t0, tm, e10, child_tol, depth + 1) +
         refine_cell(g, sm, s1, tm, t1, e11, child_tol, depth + 1);
}

double pair_energy(const Segment& s1, const Segment& s2) {
  PairGeometry g;
  g.a1 = s1.a;
  g.d1 = s1.b - s1.a;
  g.a2 = s2.a;
  g.d2 = s2.b - s2.a;
  g.n1 = s1.unit_normal();
  g.n2 = s2.unit_normal();
  g.jac = norm(g.d1) * norm(g.d2);
  double est = cell_estimate(g, 0.0, 1.0, 0.0, 1.0);
  double tol = std::max(1e-6 * std::fabs(est),
                        1e-13 * (s1.length() + s2.length()));
  return refine_cell(g, 0.0, 1.0, 0.0, 1.0, est, tol, 0);
}

}  // namespace

double crofton_energy(const SegmentSet& segments) {
  double energy = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    for (std::size_t j = i + 1; j < segments.size(); ++j) {
      // Ordered pairs (i,j) and (j,i) contribute equally.
      energy += 2.0 * pair_energy(segments[i], segments[j]);
    }
  }
  return energy;
}

AuditReport audit(const ConvexPolygon& domain, const SegmentSet& segments,
                  const std::string& scene_name, const AuditConfig& config) {
  AuditReport rep;
  rep.scene_name = scene_name;
  rep.config = config;
  rep.segment_count = static_cast<int>(segments.size());
  rep.length = total_length(segments);
  rep.perimeter = domain.perimeter();
  rep.length_lower_bound = 0.5 * rep.perimeter;
  rep.length_excess = rep.length - rep.length_lower_bound;

  OpacityCertificate cert =
      verify(domain, segments, config.n_sweep, config.max_refinements);
  rep.verdict = cert.verdict;
  rep.witness = cert.witness;
  rep.n_sweep = cert.n_sweep;
  rep.refinements_used = cert.refinements_used;
  rep.slack = cert.slack;
  rep.min_margin = cert.min_margin;
  rep.windows_checked = cert.windows_checked;

  AngularMeasure mu_o = measure_of_segments(segments);
  AngularMeasure mu_b = measure_of_boundary(domain);
  ShadowProfile profile = sample_profile(domain, mu_o, config.n_grid);

  rep.integral_gap = profile.integrate(profile.gap);
  rep.gap_identity_residual =
      gap_identity_residual(rep.length, rep.perimeter, rep.integral_gap);
  rep.gap_identity_ok = rep.gap_identity_residual <= 1e-6 * (1.0 + rep.length);

  rep.l2_gap_quadrature = l2_gap_quadrature(profile);
  L2GapResult parseval = l2_gap_parseval(mu_o, mu_b, config.ell_max);
  rep.l2_gap_parseval = parseval.value;
  rep.l2_gap_tail = parseval.tail_bound;

  MaxGap mg = max_gap_refined(domain, mu_o, profile);
  rep.max_gap_value = mg.value;
  rep.max_gap_theta = mg.theta;

  LipschitzEstimate lip = lipschitz_estimate(profile);
  rep.lipschitz_f = lip.f_rate;
  rep.lipschitz_g = lip.g_rate;

  rep.checks_applicable = rep.verdict == Verdict::certified_opaque;
  if (rep.checks_applicable) {
    if (rep.length_excess < -1e-9) {
      throw InconsistentSceneError(
          "certified scene has blocking length below half the perimeter");
    }
    rep.gap_energy = gap_energy_check(rep.length, rep.perimeter, rep.l2_gap_quadrature);
    rep.stability = stability_certificate(mu_o, mu_b, rep.length, rep.perimeter,
                                        config.ell_max);
    double excess = std::max(rep.length_excess, 0.0);
    rep.max_gap_bound = std::sqrt(4.0 * rep.length * excess);
    // The pointwise bound holds exactly; the sampled maximum may sit a grid
    // kink away, covered by the Lipschitz slack 2 L h.
    double slack = 2.0 * rep.length * profile.grid_spacing();
    rep.max_gap_ok = rep.max_gap_value <= rep.max_gap_bound + slack + 1e-9;

    if (is_unit_square(domain)) {
      rep.concentration_applicable = true;
      rep.concentration =
          concentration_square(domain, mu_o, rep.length, config.betas);
      for (const ConcentrationRow& row : rep.concentration) {
        rep.concentration_satisfied =
            rep.concentration_satisfied && row.satisfied;
      }
    }
  }

  if (rep.segment_count <= config.crofton_max_segments) {
    rep.crofton = crofton_energy(segments);
    rep.crofton_computed = true;
  }

  rep.all_satisfied = rep.gap_identity_ok;
  if (rep.checks_applicable) {
    rep.all_satisfied = rep.all_satisfied && rep.gap_energy.satisfied &&
                        rep.stability.satisfied && rep.max_gap_ok &&
                        rep.concentration_satisfied;
  }
  return rep;
}

}  // namespace opaque
