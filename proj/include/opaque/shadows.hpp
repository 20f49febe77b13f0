#pragma once

#include <vector>

#include "opaque/geometry.hpp"
#include "opaque/measures.hpp"

namespace opaque {

// Fourier coefficient a_ell of theta -> |cos theta| over [0, 2*pi):
// a_0 = 4, a_ell = 0 for odd ell, and a_ell = -4*(-1)^(ell/2) / (ell^2 - 1)
// for even ell (positive when ell = 2 mod 4, negative when ell = 0 mod 4).
double abs_cos_coefficient(long ell);

// Shadow length of the segment set in direction theta, counted with
// multiplicity: g(theta) = sum over atoms of mass * |cos(theta - angle)|.
double shadow_g(const AngularMeasure& mu, double theta);

enum class FRoute {
  geometric,    // width of the support interval
  convolution,  // same sum as shadow_g applied to the boundary measure
};

// Shadow length of the domain in direction theta.  Both routes agree to
// rounding for convex polygons.
double shadow_f(const ConvexPolygon& poly, double theta,
                FRoute route = FRoute::geometric);

// Uniform samples of f, g and their gap over [0, 2*pi).
struct ShadowProfile {
  int n_grid = 0;
  std::vector<double> theta;
  std::vector<double> f;
  std::vector<double> g;
  std::vector<double> gap;  // g - f

  double grid_spacing() const { return kTau / n_grid; }
  // Periodic trapezoid rule (equals the grid mean times 2*pi).
  double integrate(const std::vector<double>& values) const;
};

// Sample the profile on n_grid uniform angles; n_grid must be an even
// number >= 16.
ShadowProfile sample_profile(const ConvexPolygon& poly,
                             const AngularMeasure& mu_segments,
                             int n_grid = 8192);

// Integral of (g - f)^2 over the circle, by quadrature on the profile.
double l2_gap_quadrature(const ShadowProfile& profile);

// Same integral through Parseval's identity on the orientation measures.
// `value` truncates at ell_max; `tail_bound` certifies the dropped part.
struct L2GapResult {
  double value = 0.0;
  double tail_bound = 0.0;
};

L2GapResult l2_gap_parseval(const AngularMeasure& mu_segments,
                            const AngularMeasure& mu_boundary,
                            int ell_max = 256);

// Largest pointwise gap g - f over the grid and the angle attaining it.
struct MaxGap {
  double value = 0.0;
  double theta = 0.0;
};

MaxGap max_gap(const ShadowProfile& profile);

// Refine the grid maximum by golden-section search on the bracketing cells.
MaxGap max_gap_refined(const ConvexPolygon& poly, const AngularMeasure& mu,
                       const ShadowProfile& profile);

// Largest finite-difference rate observed on the profile grid.  For any
// segment set |g'| <= total mass, and |f'| <= half the perimeter, so these
// are certified lower estimates of the Lipschitz constants.
struct LipschitzEstimate {
  double f_rate = 0.0;
  double g_rate = 0.0;
};

LipschitzEstimate lipschitz_estimate(const ShadowProfile& profile);

}  // namespace opaque
