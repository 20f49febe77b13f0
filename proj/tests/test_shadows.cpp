#include "doctest.h"

#include <cmath>
#include <vector>

#include "opaque/constructions.hpp"
#include "opaque/errors.hpp"
#include "opaque/geometry.hpp"
#include "opaque/measures.hpp"
#include "opaque/rng.hpp"
#include "opaque/shadows.hpp"

namespace {

using opaque::AngularMeasure;
using opaque::ConvexPolygon;
using opaque::FRoute;
using opaque::kPi;
using opaque::kTau;
using opaque::Point2;
using opaque::SegmentSet;
using opaque::ShadowProfile;
using opaque::SplitMix64;

ConvexPolygon unit_square() {
  return ConvexPolygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
}

// Composite Simpson quadrature oracle for the |cos| Fourier coefficients:
// a_ell = integral_0^{2 pi} |cos t| cos(ell t) dt.
double abs_cos_coefficient_oracle(long ell) {
  const int n = 1 << 16;
  const double h = kTau / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = i * h;
    const double v = std::abs(std::cos(t)) * std::cos(double(ell) * t);
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += w * v;
  }
  return sum * h / 3.0;
}

ConvexPolygon random_polygon(SplitMix64& rng) {
  // Random convex polygon via the shipping generator (domain only).
  const auto scene =
      opaque::random_scene(rng.next_u64(), 3 + int(rng.next_below(18)), 0);
  return scene.domain;
}

}  // namespace

TEST_CASE("abs-cos coefficients: closed form vs quadrature") {
  CHECK(opaque::abs_cos_coefficient(0) == doctest::Approx(4.0));
  CHECK(opaque::abs_cos_coefficient(2) == doctest::Approx(4.0 / 3.0));
  CHECK(opaque::abs_cos_coefficient(4) == doctest::Approx(-4.0 / 15.0));
  CHECK(opaque::abs_cos_coefficient(6) == doctest::Approx(4.0 / 35.0));
  CHECK(opaque::abs_cos_coefficient(8) == doctest::Approx(-4.0 / 63.0));
  for (long ell = 0; ell <= 64; ++ell) {
    const double got = opaque::abs_cos_coefficient(ell);
    CHECK(std::abs(got - abs_cos_coefficient_oracle(ell)) <= 1e-8);
    CHECK(opaque::abs_cos_coefficient(-ell) == got);
    if (ell % 2 == 1) CHECK(got == 0.0);
  }
}

TEST_CASE("shadow of the domain: geometric and convolution routes agree") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    const ConvexPolygon poly = random_polygon(rng);
    for (int k = 0; k < 40; ++k) {
      const double theta = rng.uniform(0.0, kTau);
      const double geo = opaque::shadow_f(poly, theta, FRoute::geometric);
      const double conv = opaque::shadow_f(poly, theta, FRoute::convolution);
      CHECK(std::abs(geo - conv) <= 1e-9 * (1.0 + geo));
    }
  }
}

TEST_CASE("shadow of a segment set is the atomic |cos| sum") {
  SegmentSet set;
  set.emplace_back(Point2{0.0, 0.0}, Point2{2.0, 0.0});
  const AngularMeasure mu = opaque::measure_of_segments(set);
  // Single horizontal segment of length 2: g(theta) = 2 |cos theta|.
  CHECK(opaque::shadow_g(mu, 0.0) == doctest::Approx(2.0));
  CHECK(opaque::shadow_g(mu, kPi / 3) == doctest::Approx(1.0));
  CHECK(opaque::shadow_g(mu, kPi / 2) <= 1e-12);
  CHECK(opaque::shadow_g(mu, kPi) == doctest::Approx(2.0));
}

TEST_CASE("profile means recover the first moments") {
  SplitMix64 rng(123);
  for (int trial = 0; trial < 8; ++trial) {
    const auto scene = opaque::random_scene(1000 + trial, 10, 6);
    const AngularMeasure mu = opaque::measure_of_segments(scene.segments);
    const ShadowProfile profile =
        opaque::sample_profile(scene.domain, mu, 8192);
    const double int_f = profile.integrate(profile.f);
    const double int_g = profile.integrate(profile.g);
    // Cauchy's formulas: integral of f is 2 * perimeter, integral of g is
    // 4 * total length.  Trapezoid error on kinked integrands stays well
    // under 1e-6 relative at this grid size.
    CHECK(std::abs(int_f - 2.0 * scene.domain.perimeter()) <=
          1e-6 * (1.0 + std::abs(int_f)));
    CHECK(std::abs(int_g - 4.0 * opaque::total_length(scene.segments)) <=
          1e-6 * (1.0 + std::abs(int_g)));
  }
}

TEST_CASE("profile parameters are validated") {
  const ConvexPolygon sq = unit_square();
  const AngularMeasure mu = opaque::measure_of_segments(
      opaque::boundary_segments(sq));
  CHECK_THROWS_AS(opaque::sample_profile(sq, mu, 8), opaque::ParameterError);
  CHECK_THROWS_AS(opaque::sample_profile(sq, mu, 17), opaque::ParameterError);
}

TEST_CASE("l2 gap: quadrature vs spectral route, square boundary blocker") {
  const ConvexPolygon sq = unit_square();
  const AngularMeasure mu_o =
      opaque::measure_of_segments(opaque::boundary_segments(sq));
  const AngularMeasure mu_b = opaque::measure_of_boundary(sq);
  const ShadowProfile profile = opaque::sample_profile(sq, mu_o, 8192);
  const double quad = opaque::l2_gap_quadrature(profile);
  const auto spectral = opaque::l2_gap_parseval(mu_o, mu_b, 256);
  // Blocking the square with its own boundary: g = 2f, so the gap is f and
  // the integral of f^2 is 2 pi + 4 (frozen closed form).
  const double expect = kTau + 4.0;
  CHECK(quad == doctest::Approx(expect).epsilon(1e-5));
  CHECK(spectral.value == doctest::Approx(expect).epsilon(1e-5));
  CHECK(spectral.tail_bound >= 0.0);
  CHECK(spectral.value + spectral.tail_bound >= expect - 1e-6);
}

TEST_CASE("l2 gap routes agree on random scenes") {
  for (int trial = 0; trial < 10; ++trial) {
    const auto scene = opaque::random_scene(42 + trial, 8, 5);
    const AngularMeasure mu_o = opaque::measure_of_segments(scene.segments);
    const AngularMeasure mu_b = opaque::measure_of_boundary(scene.domain);
    const ShadowProfile profile =
        opaque::sample_profile(scene.domain, mu_o, 8192);
    const double quad = opaque::l2_gap_quadrature(profile);
    const auto spectral = opaque::l2_gap_parseval(mu_o, mu_b, 256);
    CHECK(std::abs(quad - spectral.value) <=
          1e-4 * (1.0 + std::abs(quad)) + spectral.tail_bound);
  }
}

TEST_CASE("max gap of the bare square against an empty blocker") {
  const ConvexPolygon sq = unit_square();
  const AngularMeasure empty;
  const ShadowProfile profile = opaque::sample_profile(sq, empty, 8192);
  // Gap = -f; its maximum over the grid is -min f = -1 at theta = 0.
  const auto mg = opaque::max_gap(profile);
  CHECK(mg.value == doctest::Approx(-1.0));
  CHECK(mg.theta == 0.0);
}

TEST_CASE("max gap refinement finds the diagonal peak of the square") {
  const ConvexPolygon sq = unit_square();
  const AngularMeasure mu_o =
      opaque::measure_of_segments(opaque::boundary_segments(sq));
  // g - f = 2f - f = f peaks at the diagonal width sqrt(2).
  const ShadowProfile profile = opaque::sample_profile(sq, mu_o, 512);
  const auto refined = opaque::max_gap_refined(sq, mu_o, profile);
  CHECK(refined.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  const double quarter = std::fmod(refined.theta, kPi / 2);
  CHECK(std::min(quarter, kPi / 2 - quarter) ==
        doctest::Approx(kPi / 4).epsilon(1e-6));
  // Refinement never loses to the coarse grid maximum.
  CHECK(refined.value >= opaque::max_gap(profile).value - 1e-15);
}

TEST_CASE("observed profile rates respect the certified Lipschitz caps") {
  for (int trial = 0; trial < 6; ++trial) {
    const auto scene = opaque::random_scene(7 + trial, 9, 4);
    const AngularMeasure mu = opaque::measure_of_segments(scene.segments);
    const ShadowProfile profile =
        opaque::sample_profile(scene.domain, mu, 4096);
    const auto rates = opaque::lipschitz_estimate(profile);
    // |g'| <= total mass; |f'| <= perimeter / 2 for convex domains.
    CHECK(rates.g_rate <= mu.total_mass() + 1e-9);
    CHECK(rates.f_rate <= scene.domain.perimeter() / 2.0 + 1e-9);
    CHECK(rates.f_rate >= 0.0);
  }
}
