#pragma once

#include <complex>
#include <vector>

#include "opaque/geometry.hpp"

namespace opaque {

// Single atom of a discrete measure on the orientation circle [0, 2*pi).
struct Atom {
  double angle = 0.0;
  double mass = 0.0;
};

// Finite nonnegative atomic measure on the circle.  Atoms are kept sorted by
// angle; construction wraps angles into [0, 2*pi), merges atoms closer than
// 1e-12 apart, and rejects negative or non-finite masses.
class AngularMeasure {
 public:
  AngularMeasure() = default;
  explicit AngularMeasure(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double total_mass() const { return total_mass_; }
  bool empty() const { return atoms_.empty(); }

  // Unnormalized Fourier coefficient: sum_j m_j * exp(-i*ell*alpha_j).
  std::complex<double> fourier(long ell) const;

  // Total mass carried by a union of closed arcs, each given as an angle
  // interval; arcs may wrap (lo > hi means the arc passes through 0).
  // Endpoint hits are resolved with an absolute angle tolerance of 1e-12.
  double mass_on_arcs(const std::vector<Interval>& arcs) const;

 private:
  std::vector<Atom> atoms_;
  double total_mass_ = 0.0;
};

// Orientation measure of a segment set: each segment of direction alpha and
// length len contributes mass len/2 at alpha and len/2 at alpha + pi.
// Total mass equals the total segment length.
AngularMeasure measure_of_segments(const SegmentSet& segments);

// Halved boundary orientation measure of a convex polygon: each edge of
// length len contributes mass len/4 at its direction and len/4 at the
// antipode.  Total mass equals perimeter / 2.
AngularMeasure measure_of_boundary(const ConvexPolygon& poly);

// Frequency-truncated negative-order Sobolev distance between two measures.
// `value` is sqrt( sum_{0 < |ell| <= ell_max} |d(ell)|^2 / (2*pi*ell^4) )
// with d = fourier(mu1) - fourier(mu2); `tail_bound` is a certified upper
// bound on the part of value^2 dropped by the truncation.
struct HMinus2Result {
  double value = 0.0;
  double tail_bound = 0.0;
};

HMinus2Result h_minus2_distance(const AngularMeasure& mu1,
                                const AngularMeasure& mu2, int ell_max = 256);

// One term of a finite trigonometric polynomial:
// cos_coeff * cos(ell*theta) + sin_coeff * sin(ell*theta).
struct Harmonic {
  int ell = 0;
  double cos_coeff = 0.0;
  double sin_coeff = 0.0;
};

// Finite trigonometric polynomial used as a smooth test function.
class TrigPolynomial {
 public:
  explicit TrigPolynomial(std::vector<Harmonic> terms);

  double evaluate(double theta) const;
  double mean() const;     // constant term
  double max_ell() const;  // highest frequency present
  // Homogeneous second-order Sobolev norm:
  // sqrt( sum_ell ell^4 * pi * (cos_coeff^2 + sin_coeff^2) ).
  double h2_norm() const;
  const std::vector<Harmonic>& terms() const { return terms_; }

 private:
  std::vector<Harmonic> terms_;
};

// Integral of phi against (mu1 - mu2) together with the test function's
// second-order norm, for duality checks against h_minus2_distance.
// Throws ParameterError when phi has a nonzero mean.
struct PairingResult {
  double pairing_gap = 0.0;  // | integral of phi d(mu1 - mu2) |
  double h2_norm_phi = 0.0;
};

PairingResult pair_with_test_function(const AngularMeasure& mu1,
                                      const AngularMeasure& mu2,
                                      const TrigPolynomial& phi);

}  // namespace opaque
