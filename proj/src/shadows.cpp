#include "opaque/shadows.hpp"

#include <algorithm>
#include <cmath>

#include "opaque/errors.hpp"

namespace opaque {

double abs_cos_coefficient(long ell) {
  if (ell < 0) ell = -ell;
  if (ell == 0) return 4.0;
  if (ell % 2 == 1) return 0.0;
  double denom = static_cast<double>(ell) * ell - 1.0;
  return (ell % 4 == 2) ? 4.0 / denom : -4.0 / denom;
}

double shadow_g(const AngularMeasure& mu, double theta) {
  double sum = 0.0;
  for (const Atom& a : mu.atoms()) {
    sum += a.mass * std::fabs(std::cos(theta - a.angle));
  }
  return sum;
}

double shadow_f(const ConvexPolygon& poly, double theta, FRoute route) {
  if (route == FRoute::geometric) {
    return width(poly, theta);
  }
  return shadow_g(measure_of_boundary(poly), theta);
}

double ShadowProfile::integrate(const std::vector<double>& values) const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * grid_spacing();
}

ShadowProfile sample_profile(const ConvexPolygon& poly,
                             const AngularMeasure& mu_segments, int n_grid) {
  if (n_grid < 16 || n_grid % 2 != 0) {
    throw ParameterError("sample_profile requires an even n_grid >= 16");
  }
  ShadowProfile p;
  p.n_grid = n_grid;
  p.theta.resize(n_grid);
  p.f.resize(n_grid);
  p.g.resize(n_grid);
  p.gap.resize(n_grid);
  double h = kTau / n_grid;
  for (int i = 0; i < n_grid; ++i) {
    double t = i * h;
    p.theta[i] = t;
    p.f[i] = width(poly, t);
    p.g[i] = shadow_g(mu_segments, t);
    p.gap[i] = p.g[i] - p.f[i];
  }
  return p;
}

double l2_gap_quadrature(const ShadowProfile& profile) {
  double sum = 0.0;
  for (double v : profile.gap) sum += v * v;
  return sum * profile.grid_spacing();
}

L2GapResult l2_gap_parseval(const AngularMeasure& mu_segments,
                            const AngularMeasure& mu_boundary, int ell_max) {
  if (ell_max < 2) {
    throw ParameterError("l2_gap_parseval requires ell_max >= 2");
  }
  // g - f has mean (4L - 2P) / (2*pi) and Fourier coefficients
  // a_ell * d(ell) / (2*pi) where d = fourier(mu_O) - fourier(mu_boundary).
  double mean_term = 4.0 * mu_segments.total_mass() -
                     4.0 * mu_boundary.total_mass();
  double sum = mean_term * mean_term / kTau;
  for (int ell = 2; ell <= ell_max; ell += 2) {
    double a = abs_cos_coefficient(ell);
    std::complex<double> d =
        mu_segments.fourier(ell) - mu_boundary.fourier(ell);
    sum += 2.0 * a * a * std::norm(d) / kTau;
  }
  // |a_ell| = 4/(ell^2-1) and |d| is at most the combined mass, so the
  // dropped frequencies contribute at most
  // 2 * sum_{ell > L} 16/(ell^2-1)^2 * M^2 / (2*pi) <= 16 M^2 / (pi * 3 (L-1)^3).
  double mass = mu_segments.total_mass() + mu_boundary.total_mass();
  double lm = static_cast<double>(ell_max) - 1.0;
  double tail = 16.0 * mass * mass / (kPi * 3.0 * lm * lm * lm);
  return {sum, tail};
}

MaxGap max_gap(const ShadowProfile& profile) {
  MaxGap m{profile.gap[0], profile.theta[0]};
  for (int i = 1; i < profile.n_grid; ++i) {
    if (profile.gap[i] > m.value) {
      m.value = profile.gap[i];
      m.theta = profile.theta[i];
    }
  }
  return m;
}

MaxGap max_gap_refined(const ConvexPolygon& poly, const AngularMeasure& mu,
                       const ShadowProfile& profile) {
  MaxGap coarse = max_gap(profile);
  double h = profile.grid_spacing();
  double lo = coarse.theta - h;
  double hi = coarse.theta + h;
  auto gap_at = [&](double t) { return shadow_g(mu, t) - width(poly, t); };

  // Golden-section search for the maximum over the bracketing cells.
  const double inv_phi = 0.61803398874989484820458683437;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = gap_at(x1), f2 = gap_at(x2);
  while (b - a > 1e-10) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = gap_at(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = gap_at(x1);
    }
  }
  double t = 0.5 * (a + b);
  double v = gap_at(t);
  if (v >= coarse.value) {
    return {v, wrap_angle(t)};
  }
  return coarse;
}

LipschitzEstimate lipschitz_estimate(const ShadowProfile& profile) {
  LipschitzEstimate est;
  double h = profile.grid_spacing();
  int n = profile.n_grid;
  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    est.f_rate = std::max(est.f_rate,
                          std::fabs(profile.f[j] - profile.f[i]) / h);
    est.g_rate = std::max(est.g_rate,
                          std::fabs(profile.g[j] - profile.g[i]) / h);
  }
  return est;
}

}  // namespace opaque
