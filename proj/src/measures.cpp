#include "opaque/measures.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

#include "opaque/errors.hpp"

namespace opaque {

namespace {

constexpr double kAngleMergeTol = 1e-12;

}  // namespace

AngularMeasure::AngularMeasure(std::vector<Atom> atoms) {
  for (Atom& a : atoms) {
    if (!std::isfinite(a.angle) || !std::isfinite(a.mass)) {
      throw ValidationError("measure atom is not finite");
    }
    if (a.mass < 0.0) {
      throw ValidationError("measure atom has negative mass");
    }
    a.angle = wrap_angle(a.angle);
  }
  std::erase_if(atoms, [](const Atom& a) { return a.mass == 0.0; });
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.angle < b.angle; });

  // Merge atoms within the angle tolerance, including across the 2*pi seam.
  for (const Atom& a : atoms) {
    if (!atoms_.empty() && a.angle - atoms_.back().angle <= kAngleMergeTol) {
      atoms_.back().mass += a.mass;
    } else {
      atoms_.push_back(a);
    }
  }
  if (atoms_.size() >= 2 &&
      atoms_.front().angle + kTau - atoms_.back().angle <= kAngleMergeTol) {
    atoms_.front().mass += atoms_.back().mass;
    atoms_.pop_back();
  }
  for (const Atom& a : atoms_) total_mass_ += a.mass;
}

std::complex<double> AngularMeasure::fourier(long ell) const {
  std::complex<double> sum = 0.0;
  for (const Atom& a : atoms_) {
    sum += std::polar(a.mass, -static_cast<double>(ell) * a.angle);
  }
  return sum;
}

double AngularMeasure::mass_on_arcs(const std::vector<Interval>& arcs) const {
  double sum = 0.0;
  for (const Atom& a : atoms_) {
    bool hit = false;
    for (const Interval& arc : arcs) {
      if (arc.hi - arc.lo >= kTau) {
        hit = true;
        break;
      }
      double width = arc.hi - arc.lo;
      if (width < 0.0) width += kTau;  // lo > hi wraps through zero
      double lo = wrap_angle(arc.lo);
      double hi = lo + width;
      // The atom angle lives in [0, 2*pi); the arc may extend past 2*pi.
      if ((a.angle >= lo - kAngleMergeTol && a.angle <= hi + kAngleMergeTol) ||
          (a.angle + kTau >= lo - kAngleMergeTol &&
           a.angle + kTau <= hi + kAngleMergeTol)) {
        hit = true;
        break;
      }
    }
    if (hit) sum += a.mass;
  }
  return sum;
}

AngularMeasure measure_of_segments(const SegmentSet& segments) {
  std::vector<Atom> atoms;
  atoms.reserve(2 * segments.size());
  for (const Segment& s : segments) {
    double alpha = s.angle();
    double half = 0.5 * s.length();
    atoms.push_back({alpha, half});
    atoms.push_back({alpha + kPi, half});
  }
  return AngularMeasure(std::move(atoms));
}

AngularMeasure measure_of_boundary(const ConvexPolygon& poly) {
  const std::vector<Point2>& v = poly.vertices();
  std::vector<Atom> atoms;
  atoms.reserve(2 * v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Segment edge(v[i], v[(i + 1) % v.size()]);
    double alpha = edge.angle();
    double quarter = 0.25 * edge.length();
    atoms.push_back({alpha, quarter});
    atoms.push_back({alpha + kPi, quarter});
  }
  return AngularMeasure(std::move(atoms));
}

HMinus2Result h_minus2_distance(const AngularMeasure& mu1,
                                const AngularMeasure& mu2, int ell_max) {
  if (ell_max < 2) {
    throw ParameterError("h_minus2_distance requires ell_max >= 2");
  }
  double sum = 0.0;
  for (int ell = 1; ell <= ell_max; ++ell) {
    std::complex<double> d = mu1.fourier(ell) - mu2.fourier(ell);
    double ell4 = static_cast<double>(ell) * ell * ell * ell;
    // Frequencies -ell and +ell carry conjugate coefficients, hence the 2.
    sum += 2.0 * std::norm(d) / (kTau * ell4);
  }
  double mass = mu1.total_mass() + mu2.total_mass();
  double lmax = static_cast<double>(ell_max);
  // |d(ell)| <= total mass and sum_{ell > L} ell^-4 <= 1/(3 L^3).
  double tail = mass * mass * 2.0 / (kTau * 3.0 * lmax * lmax * lmax);
  return {std::sqrt(sum), tail};
}

TrigPolynomial::TrigPolynomial(std::vector<Harmonic> terms) {
  std::map<int, Harmonic> combined;
  for (const Harmonic& h : terms) {
    if (h.ell < 0) {
      throw ParameterError("harmonic frequency must be nonnegative");
    }
    if (!std::isfinite(h.cos_coeff) || !std::isfinite(h.sin_coeff)) {
      throw ParameterError("harmonic coefficient is not finite");
    }
    Harmonic& slot = combined[h.ell];
    slot.ell = h.ell;
    slot.cos_coeff += h.cos_coeff;
    slot.sin_coeff += h.sin_coeff;
  }
  for (const auto& [ell, h] : combined) terms_.push_back(h);
}

double TrigPolynomial::evaluate(double theta) const {
  double v = 0.0;
  for (const Harmonic& h : terms_) {
    v += h.cos_coeff * std::cos(h.ell * theta) +
         h.sin_coeff * std::sin(h.ell * theta);
  }
  return v;
}

double TrigPolynomial::mean() const {
  for (const Harmonic& h : terms_) {
    if (h.ell == 0) return h.cos_coeff;
  }
  return 0.0;
}

double TrigPolynomial::max_ell() const {
  int m = 0;
  for (const Harmonic& h : terms_) m = std::max(m, h.ell);
  return m;
}

double TrigPolynomial::h2_norm() const {
  double sum = 0.0;
  for (const Harmonic& h : terms_) {
    if (h.ell == 0) continue;
    double ell4 = static_cast<double>(h.ell) * h.ell * h.ell * h.ell;
    sum += ell4 * kPi *
           (h.cos_coeff * h.cos_coeff + h.sin_coeff * h.sin_coeff);
  }
  return std::sqrt(sum);
}

PairingResult pair_with_test_function(const AngularMeasure& mu1,
                                      const AngularMeasure& mu2,
                                      const TrigPolynomial& phi) {
  if (phi.mean() != 0.0) {
    throw ParameterError("test function must have zero mean");
  }
  double integral = 0.0;
  for (const Atom& a : mu1.atoms()) integral += a.mass * phi.evaluate(a.angle);
  for (const Atom& a : mu2.atoms()) integral -= a.mass * phi.evaluate(a.angle);
  return {std::fabs(integral), phi.h2_norm()};
}

}  // namespace opaque
