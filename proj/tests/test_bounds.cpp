#include "doctest.h"

#include <cmath>
#include <vector>

#include "opaque/bounds.hpp"
#include "opaque/constructions.hpp"
#include "opaque/errors.hpp"
#include "opaque/geometry.hpp"
#include "opaque/measures.hpp"

namespace {

using opaque::AngularMeasure;
using opaque::AuditConfig;
using opaque::ConvexPolygon;
using opaque::kPi;
using opaque::kTau;
using opaque::Point2;
using opaque::SceneSpec;
using opaque::SegmentSet;
using opaque::Verdict;

ConvexPolygon unit_square() {
  return ConvexPolygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
}

SceneSpec scaled(const SceneSpec& scene, double lambda) {
  std::vector<Point2> verts;
  for (Point2 v : scene.domain.vertices()) verts.push_back(lambda * v);
  SegmentSet segs;
  for (const auto& s : scene.segments) {
    segs.emplace_back(lambda * s.a, lambda * s.b);
  }
  return {scene.name, ConvexPolygon(verts), segs, std::nullopt, std::nullopt};
}

AuditConfig fast_config() {
  AuditConfig cfg;
  cfg.n_grid = 2048;
  cfg.n_sweep = 8192;
  cfg.max_refinements = 2;
  cfg.ell_max = 128;
  cfg.crofton_max_segments = 16;
  return cfg;
}

}  // namespace

TEST_CASE("gap-identity residual is a plain absolute difference") {
  CHECK(opaque::gap_identity_residual(4.0, 4.0, 8.0) == doctest::Approx(0.0));
  CHECK(opaque::gap_identity_residual(4.0, 4.0, 8.4) == doctest::Approx(0.1));
  CHECK(opaque::gap_identity_residual(3.0, 4.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("gap energy bound for the square boundary blocker") {
  // L = 4, P = 4, excess 2: rhs = 8*sqrt(4)*2^1.5, conservative = 64 exactly.
  const auto bound = opaque::gap_energy_check(4.0, 4.0, kPi * 2 + 4.0);
  CHECK(bound.rhs == doctest::Approx(45.2548339959390416).epsilon(1e-12));
  CHECK(bound.conservative_rhs == doctest::Approx(64.0).epsilon(1e-12));
  CHECK(bound.satisfied);

  // Zero excess forces a zero gap.
  const auto tight = opaque::gap_energy_check(2.0, 4.0, 0.0);
  CHECK(tight.rhs == doctest::Approx(0.0));
  CHECK(tight.satisfied);
  const auto broken = opaque::gap_energy_check(2.0, 4.0, 0.1);
  CHECK_FALSE(broken.satisfied);

  // Length below half the perimeter cannot come from an opaque scene.
  CHECK_THROWS_AS(opaque::gap_energy_check(1.9, 4.0, 0.0),
                  opaque::InconsistentSceneError);
}

TEST_CASE("stability certificate: square boundary (frozen values)") {
  const auto scene = opaque::square_boundary();
  const AngularMeasure mu_o = opaque::measure_of_segments(scene.segments);
  const AngularMeasure mu_b = opaque::measure_of_boundary(scene.domain);
  // ell_max 4096 keeps the spectral truncation below the 1e-9 tolerance
  // used against the closed-form distance.
  const auto cert = opaque::stability_certificate(mu_o, mu_b, 4.0, 4.0, 4096);
  // Closed forms: distance sqrt(pi^3/5760), bound 2^{3/4}.
  CHECK(cert.lhs == doctest::Approx(0.0733691634536293827).epsilon(1e-9));
  CHECK(cert.rhs == doctest::Approx(1.68179283050742909).epsilon(1e-12));
  CHECK(cert.satisfied);
  CHECK(std::sqrt(cert.lhs * cert.lhs + cert.lhs_tail) <= cert.rhs + 1e-9);
}

TEST_CASE("stability certificate: conjectured square blocker") {
  const auto scene = opaque::square_conjectured();
  const AngularMeasure mu_o = opaque::measure_of_segments(scene.segments);
  const AngularMeasure mu_b = opaque::measure_of_boundary(scene.domain);
  const double len = opaque::total_length(scene.segments);
  const auto cert = opaque::stability_certificate(mu_o, mu_b, len, 4.0, 256);
  CHECK(cert.rhs == doctest::Approx(0.644091539872321331).epsilon(1e-12));
  CHECK(cert.satisfied);
  CHECK(cert.lhs > 0.0);
}

TEST_CASE("unit-square detection is rotation-of-order tolerant") {
  CHECK(opaque::is_unit_square(unit_square()));
  CHECK(opaque::is_unit_square(
      ConvexPolygon({{1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}, {0.0, 0.0}})));
  CHECK_FALSE(opaque::is_unit_square(
      ConvexPolygon({{0.0, 0.0}, {2.0, 0.0}, {2.0, 2.0}, {0.0, 2.0}})));
  CHECK_FALSE(opaque::is_unit_square(
      ConvexPolygon({{0.1, 0.0}, {1.1, 0.0}, {1.1, 1.0}, {0.1, 1.0}})));
  CHECK_FALSE(
      opaque::is_unit_square(ConvexPolygon({{0, 0}, {1, 0}, {0.5, 1.0}})));
}

TEST_CASE("angular mass concentration rows on the conjectured square") {
  const auto scene = opaque::square_conjectured();
  const AngularMeasure mu = opaque::measure_of_segments(scene.segments);
  const double len = opaque::total_length(scene.segments);
  const auto rows = opaque::concentration_square(
      scene.domain, mu, len, {kPi / 12, kPi / 6, kPi / 4});
  REQUIRE(rows.size() == 3);

  // beta = pi/12: the leg directions sit exactly on the closed-arc
  // endpoints, so every atom is collected.
  CHECK(rows[0].lhs == doctest::Approx(len).epsilon(1e-12));
  CHECK(rows[0].rhs ==
        doctest::Approx((len - 2.0) / (1.0 - std::cos(kPi / 12))));
  CHECK(rows[0].satisfied);

  // beta = pi/6: only the diagonal-direction mass survives (frozen values).
  const double t = (3.0 - std::sqrt(3.0)) / 6.0;
  const double diagonal_mass = std::sqrt(2.0) / 2.0 * (1.0 + 2.0 * t);
  CHECK(rows[1].lhs == doctest::Approx(1.00596527190923203).epsilon(1e-12));
  CHECK(rows[1].lhs == doctest::Approx(diagonal_mass).epsilon(1e-12));
  CHECK(rows[1].rhs == doctest::Approx(4.76925067746886856).epsilon(1e-12));
  CHECK(rows[1].satisfied);

  // beta = pi/4: the arcs degenerate to the diagonal directions themselves.
  CHECK(rows[2].lhs == doctest::Approx(diagonal_mass).epsilon(1e-12));
  CHECK(rows[2].satisfied);
}

TEST_CASE("concentration rejects misuse") {
  const auto scene = opaque::square_conjectured();
  const AngularMeasure mu = opaque::measure_of_segments(scene.segments);
  const double len = opaque::total_length(scene.segments);

  const auto tri = opaque::triangle_tripod(1.0);
  CHECK_THROWS_AS(
      opaque::concentration_square(tri.domain, mu, len, {kPi / 6}),
      opaque::DomainMismatchError);
  CHECK_THROWS_AS(
      opaque::concentration_square(scene.domain, mu, len, {0.0}),
      opaque::ParameterError);
  CHECK_THROWS_AS(
      opaque::concentration_square(scene.domain, mu, len, {kPi / 4 + 0.01}),
      opaque::ParameterError);
  CHECK_THROWS_AS(
      opaque::concentration_square(scene.domain, mu, 1.9, {kPi / 6}),
      opaque::InconsistentSceneError);
}

TEST_CASE("crofton energy: exact zeros and the parallel-pair closed form") {
  SegmentSet single;
  single.emplace_back(Point2{0.0, 0.0}, Point2{3.0, 1.0});
  CHECK(opaque::crofton_energy(single) == 0.0);

  // Collinear pair: the integrand vanishes identically.
  SegmentSet collinear;
  collinear.emplace_back(Point2{0.0, 0.0}, Point2{1.0, 1.0});
  collinear.emplace_back(Point2{2.0, 2.0}, Point2{3.0, 3.0});
  CHECK(opaque::crofton_energy(collinear) == 0.0);

  // Two parallel unit segments at distance 1: ordered energy 4(sqrt(2)-1).
  SegmentSet parallel;
  parallel.emplace_back(Point2{0.0, 0.0}, Point2{1.0, 0.0});
  parallel.emplace_back(Point2{0.0, 1.0}, Point2{1.0, 1.0});
  CHECK(opaque::crofton_energy(parallel) ==
        doctest::Approx(1.65685424949238020).epsilon(1e-8));
}

TEST_CASE("crofton energy of a convex boundary equals twice the perimeter") {
  // Almost every line meeting the square crosses the boundary exactly twice,
  // giving two ordered pairs per line; the line measure of the square equals
  // its perimeter.  Corner-touching edge pairs make the integrand singular,
  // which is exactly what the adaptive refinement has to absorb.
  const auto scene = opaque::square_boundary();
  CHECK(opaque::crofton_energy(scene.segments) ==
        doctest::Approx(8.0).epsilon(1e-4));
}

TEST_CASE("crofton energy scales linearly") {
  const auto scene = opaque::square_conjectured();
  const double base = opaque::crofton_energy(scene.segments);
  CHECK(base > 0.0);
  const auto doubled = scaled(scene, 2.0);
  CHECK(opaque::crofton_energy(doubled.segments) ==
        doctest::Approx(2.0 * base).epsilon(1e-5));
}

TEST_CASE("audit of the square boundary blocker") {
  const auto scene = opaque::square_boundary();
  const auto report =
      opaque::audit(scene.domain, scene.segments, scene.name, fast_config());

  CHECK(report.scene_name == "square_boundary");
  CHECK(report.segment_count == 4);
  CHECK(report.length == doctest::Approx(4.0));
  CHECK(report.length_lower_bound == doctest::Approx(2.0));
  CHECK(report.length_excess == doctest::Approx(2.0));
  CHECK(report.verdict == Verdict::certified_opaque);

  CHECK(report.integral_gap == doctest::Approx(8.0).epsilon(1e-6));
  CHECK(report.gap_identity_residual <= 1e-6 * (1.0 + report.length));
  CHECK(report.gap_identity_ok);

  CHECK(report.l2_gap_quadrature == doctest::Approx(kTau + 4.0).epsilon(1e-5));
  CHECK(report.l2_gap_parseval == doctest::Approx(kTau + 4.0).epsilon(1e-5));

  CHECK(report.checks_applicable);
  CHECK(report.gap_energy.satisfied);
  CHECK(report.stability.satisfied);

  CHECK(report.concentration_applicable);
  CHECK(report.concentration.size() == fast_config().betas.size());
  CHECK(report.concentration_satisfied);
  // The boundary has axis directions only, so every row's lhs is zero.
  for (const auto& row : report.concentration) {
    CHECK(row.lhs <= 1e-12);
  }

  CHECK(report.max_gap_value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK(report.max_gap_bound ==
        doctest::Approx(std::sqrt(32.0)).epsilon(1e-12));
  CHECK(report.max_gap_ok);

  CHECK(report.lipschitz_f <= 2.0 + 1e-9);
  CHECK(report.lipschitz_g <= 4.0 + 1e-9);

  CHECK(report.crofton_computed);
  CHECK(report.crofton == doctest::Approx(8.0).epsilon(1e-4));

  CHECK(report.all_satisfied);
}

TEST_CASE("audit of a refuted scene skips the opacity-only checks") {
  SegmentSet two;
  two.emplace_back(Point2{0.0, 0.0}, Point2{1.0, 0.0});
  two.emplace_back(Point2{0.0, 1.0}, Point2{1.0, 1.0});
  const auto report =
      opaque::audit(unit_square(), two, "two_sides", fast_config());
  CHECK(report.verdict == Verdict::non_opaque);
  CHECK(report.witness.has_value());
  CHECK_FALSE(report.checks_applicable);
  CHECK_FALSE(report.concentration_applicable);
  // Length excess still measured: L = 2 = P/2 exactly.
  CHECK(report.length_excess == doctest::Approx(0.0));
  CHECK(report.gap_identity_ok);
  CHECK(report.all_satisfied);  // nothing applicable was violated
}

TEST_CASE("audit quantities scale correctly with the scene") {
  const auto base_scene = opaque::square_conjectured();
  const auto base = opaque::audit(base_scene.domain, base_scene.segments,
                                  base_scene.name, fast_config());
  const double lambda = 2.0;
  const auto big_scene = scaled(base_scene, lambda);
  const auto big = opaque::audit(big_scene.domain, big_scene.segments,
                                 big_scene.name, fast_config());

  CHECK(big.length == doctest::Approx(lambda * base.length).epsilon(1e-9));
  CHECK(big.perimeter ==
        doctest::Approx(lambda * base.perimeter).epsilon(1e-9));
  CHECK(big.length_excess ==
        doctest::Approx(lambda * base.length_excess).epsilon(1e-9));
  CHECK(big.integral_gap ==
        doctest::Approx(lambda * base.integral_gap).epsilon(1e-9));
  CHECK(big.l2_gap_quadrature ==
        doctest::Approx(lambda * lambda * base.l2_gap_quadrature)
            .epsilon(1e-9));
  CHECK(big.stability.lhs ==
        doctest::Approx(lambda * base.stability.lhs).epsilon(1e-9));
  CHECK(big.stability.rhs ==
        doctest::Approx(lambda * base.stability.rhs).epsilon(1e-9));
  CHECK(big.max_gap_value ==
        doctest::Approx(lambda * base.max_gap_value).epsilon(1e-9));
  CHECK(big.crofton == doctest::Approx(lambda * base.crofton).epsilon(1e-5));
  CHECK(big.verdict == Verdict::certified_opaque);
  CHECK(big.all_satisfied);
}
