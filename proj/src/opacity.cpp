#include "opaque/opacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "opaque/errors.hpp"

namespace opaque {

namespace {

// Scene recentered at the domain's bounding-box center.  Segment endpoints
// are merged into shared nodes so that joints are joined exactly; the
// tolerance only mops up serialization round-off, exact joints produce
// identical doubles.
struct Frame {
  std::vector<Point2> verts;  // centered polygon vertices, CCW
  std::vector<Point2> nodes;  // centered, deduplicated segment endpoints
  struct SegNodes {
    int a = 0;
    int b = 0;
  };
  std::vector<SegNodes> segs;
  Point2 center;
  double radius = 0.0;  // bound on |p| over vertices and nodes
  double node_tol = 0.0;
  double dom_tol = 0.0;
  double gap_tol = 0.0;
};

Frame build_frame(const ConvexPolygon& poly, const SegmentSet& segments) {
  Frame fr;
  fr.center = poly.bounding_box_center();
  fr.verts.reserve(poly.vertices().size());
  for (const Point2& v : poly.vertices()) fr.verts.push_back(v - fr.center);
  for (const Point2& v : fr.verts) fr.radius = std::max(fr.radius, norm(v));

  std::vector<Point2> ends;
  ends.reserve(2 * segments.size());
  for (const Segment& s : segments) {
    ends.push_back(s.a - fr.center);
    ends.push_back(s.b - fr.center);
  }
  for (const Point2& p : ends) fr.radius = std::max(fr.radius, norm(p));

  fr.node_tol = 1e-12 * (1.0 + fr.radius);
  fr.dom_tol = 1e-12 * (1.0 + fr.radius);
  fr.gap_tol = 1e-9 * (1.0 + fr.radius);

  fr.segs.reserve(segments.size());
  for (std::size_t k = 0; k < ends.size(); k += 2) {
    int id[2];
    for (int e = 0; e < 2; ++e) {
      const Point2 p = ends[k + e];
      int found = -1;
      for (std::size_t j = 0; j < fr.nodes.size(); ++j) {
        if (distance(fr.nodes[j], p) <= fr.node_tol) {
          found = static_cast<int>(j);
          break;
        }
      }
      if (found < 0) {
        fr.nodes.push_back(p);
        found = static_cast<int>(fr.nodes.size()) - 1;
      }
      id[e] = found;
    }
    fr.segs.push_back({id[0], id[1]});
  }
  return fr;
}

// Minimum of t -> <w, u(t)> over [t0, t1].
double min_inner_product(Point2 w, double t0, double t1) {
  double m = std::min(w.x * std::cos(t0) + w.y * std::sin(t0),
                      w.x * std::cos(t1) + w.y * std::sin(t1));
  double r = norm(w);
  if (r == 0.0) return 0.0;
  // <w, u(t)> = r * cos(t - phase); the interior minimum sits at phase + pi.
  double phase = std::atan2(w.y, w.x);
  double k = std::ceil((t0 - phase - kPi) / kTau);
  double tmin = phase + kPi + k * kTau;
  if (tmin <= t1) m = -r;
  return m;
}

// Normalize (theta, offset) so theta lands in [0, pi); the line is the same.
WitnessLine normalize_line(double theta, double offset) {
  while (theta < 0.0) {
    theta += kPi;
    offset = -offset;
  }
  while (theta >= kPi) {
    theta -= kPi;
    offset = -offset;
  }
  return {theta, offset};
}

struct IvRec {
  double lo = 0.0;
  double hi = 0.0;
  int nlo = 0;
  int nhi = 0;
};

struct WindowOutcome {
  bool cert_ok = false;
  std::optional<WitnessLine> witness;
};

// One-pass sweep evaluator.  For a window [theta-h, theta+h] every projected
// point moves by at most sigma = R*h, so segment footprints computed at the
// center are trustworthy up to sigma.  Certification groups footprints into
// components whose union provably stays connected over the whole window:
//   - two footprints overlapping by >= 2*sigma stay overlapped;
//   - footprints sharing an endpoint node track each other exactly;
//   - a node whose track provably stays inside another footprint
//     (windowed sinusoid bounds) ties the two together.
// A component certifies the window when it provably reaches past both ends
// of the domain's own footprint, either by a 2*sigma margin or because every
// vertex that could attain the extreme is matched by a component node that
// provably stays outside it.
class SweepEngine {
 public:
  SweepEngine(const ConvexPolygon& poly, const SegmentSet& segments,
              const Frame& fr, double base_slack)
      : poly_(poly), segs_(segments), fr_(fr) {
    npos_.resize(fr_.nodes.size());
    ivs_.resize(fr_.segs.size());
    order_.resize(fr_.segs.size());
    std::iota(order_.begin(), order_.end(), 0);
    node_comp_.assign(fr_.nodes.size(), -1);
    node_epoch_.assign(fr_.nodes.size(), -1);
    cur_min_margin_ = 64.0 * base_slack;  // reporting cap
    margin_tol_ = 1e-9 * (1.0 + fr_.radius);
  }

  WindowOutcome process(double theta, double half_width);

  double min_margin() const { return cur_min_margin_; }

 private:
  void project(double theta);
  int climb(Point2 u, int start, int dir) const;
  void insertion_sort_order();
  std::optional<WitnessLine> witness_pass(double theta);
  bool cert_at(double sigma, double t0, double t1);
  bool comp_has_inside_node(int root, const IvRec& iv, double sigma,
                            double a, double b) const;
  bool end_anchored(int root, bool top, double sigma, double t0, double tc,
                    double t1) const;

  // union-find over components
  int find(int c) {
    while (comps_[c].parent != c) {
      comps_[c].parent = comps_[comps_[c].parent].parent;
      c = comps_[c].parent;
    }
    return c;
  }

  struct Comp {
    double F = 0.0;       // highest footprint end among members
    double min_lo = 0.0;  // lowest footprint start among members
    int parent = 0;
    std::vector<int> nodes;
  };

  const ConvexPolygon& poly_;
  const SegmentSet& segs_;
  const Frame& fr_;

  // per-angle state
  Point2 u_;
  double theta_ = 0.0;
  double olo_ = 0.0, ohi_ = 0.0;
  int arg_lo_ = 0, arg_hi_ = 0;
  std::vector<double> npos_;
  std::vector<IvRec> ivs_;
  std::vector<int> order_;

  // per-evaluation component state
  std::vector<Comp> comps_;
  std::vector<int> roots_;
  std::vector<int> join_buf_;
  std::vector<int> node_comp_;
  std::vector<int> node_epoch_;
  int epoch_ = 0;

  double cur_min_margin_ = 0.0;
  double margin_tol_ = 0.0;
};

int SweepEngine::climb(Point2 u, int start, int dir) const {
  // Projections of a convex CCW ring are cyclically unimodal, so local
  // hill-climbing from any start finds the global extreme.
  const int n = static_cast<int>(fr_.verts.size());
  auto val = [&](int i) {
    double v = dot(fr_.verts[i], u);
    return dir > 0 ? v : -v;
  };
  int cur = start;
  int steps = 0;
  while (steps < n && val((cur + 1) % n) > val(cur)) {
    cur = (cur + 1) % n;
    ++steps;
  }
  while (steps < n && val((cur + n - 1) % n) > val(cur)) {
    cur = (cur + n - 1) % n;
    ++steps;
  }
  return cur;
}

void SweepEngine::project(double theta) {
  theta_ = theta;
  u_ = unit_direction(theta);
  for (std::size_t i = 0; i < fr_.nodes.size(); ++i) {
    npos_[i] = dot(fr_.nodes[i], u_);
  }
  for (std::size_t s = 0; s < fr_.segs.size(); ++s) {
    int a = fr_.segs[s].a, b = fr_.segs[s].b;
    if (npos_[a] <= npos_[b]) {
      ivs_[s] = {npos_[a], npos_[b], a, b};
    } else {
      ivs_[s] = {npos_[b], npos_[a], b, a};
    }
  }
  arg_hi_ = climb(u_, arg_hi_, +1);
  arg_lo_ = climb(u_, arg_lo_, -1);
  ohi_ = dot(fr_.verts[arg_hi_], u_);
  olo_ = dot(fr_.verts[arg_lo_], u_);
  insertion_sort_order();
}

void SweepEngine::insertion_sort_order() {
  // Adjacent sweep angles leave the order nearly sorted.
  for (std::size_t i = 1; i < order_.size(); ++i) {
    int idx = order_[i];
    double key = ivs_[idx].lo;
    std::size_t j = i;
    while (j > 0 && ivs_[order_[j - 1]].lo > key) {
      order_[j] = order_[j - 1];
      --j;
    }
    order_[j] = idx;
  }
}

std::optional<WitnessLine> SweepEngine::witness_pass(double theta) {
  auto try_gap = [&](double glo, double ghi) -> std::optional<WitnessLine> {
    if (ghi - glo <= fr_.gap_tol) return std::nullopt;
    double offset = 0.5 * (glo + ghi) + dot(fr_.center, u_);
    WitnessLine w = normalize_line(theta, offset);
    if (witness_check(poly_, segs_, w.theta, w.offset)) return w;
    return std::nullopt;
  };
  double frontier = olo_;
  for (int idx : order_) {
    const IvRec& iv = ivs_[idx];
    if (iv.lo > frontier) {
      if (auto w = try_gap(frontier, std::min(iv.lo, ohi_))) return w;
    }
    frontier = std::max(frontier, iv.hi);
    if (frontier >= ohi_) return std::nullopt;
  }
  return try_gap(frontier, ohi_);
}

bool SweepEngine::comp_has_inside_node(int root, const IvRec& iv, double sigma,
                                       double a, double b) const {
  const Comp& c = comps_[root];
  const Point2 plo = fr_.nodes[iv.nlo];
  const Point2 phi = fr_.nodes[iv.nhi];
  for (int x : c.nodes) {
    double px = npos_[x];
    if (px < iv.lo - fr_.dom_tol || px > iv.hi + fr_.dom_tol) continue;
    // A node at least 2*sigma inside at the center cannot drift out.
    if (px >= iv.lo + 2.0 * sigma && px <= iv.hi - 2.0 * sigma) return true;
    const Point2 xp = fr_.nodes[x];
    if (min_inner_product(xp - plo, a, b) >= -fr_.dom_tol &&
        min_inner_product(phi - xp, a, b) >= -fr_.dom_tol) {
      return true;
    }
  }
  return false;
}

bool SweepEngine::end_anchored(int root, bool top, double sigma, double t0,
                               double tc, double t1) const {
  const Comp& c = comps_[root];
  const int n = static_cast<int>(fr_.verts.size());
  const double extreme = top ? ohi_ : olo_;
  const int arg = top ? arg_hi_ : arg_lo_;

  auto near_extreme = [&](int vi) {
    double pv = dot(fr_.verts[vi], u_);
    return top ? pv >= extreme - 2.0 * sigma - fr_.dom_tol
               : pv <= extreme + 2.0 * sigma + fr_.dom_tol;
  };
  // A vertex can only attain the extreme inside the window if it projects
  // within 2*sigma of it at the center; for each such vertex and each half
  // of the window some component node must provably stay outside it.
  auto anchored_vertex = [&](int vi) {
    const Point2 vp = fr_.verts[vi];
    double pv = dot(vp, u_);
    for (int half = 0; half < 2; ++half) {
      double a = half == 0 ? t0 : tc;
      double b = half == 0 ? tc : t1;
      bool ok = false;
      for (int x : c.nodes) {
        double px = npos_[x];
        if (top ? px < pv - fr_.dom_tol : px > pv + fr_.dom_tol) continue;
        if (top ? px >= pv + 2.0 * sigma : px <= pv - 2.0 * sigma) {
          ok = true;  // cannot drift below/above the vertex
          break;
        }
        Point2 w = top ? fr_.nodes[x] - vp : vp - fr_.nodes[x];
        if (min_inner_product(w, a, b) >= -fr_.dom_tol) {
          ok = true;
          break;
        }
      }
      if (!ok) return false;
    }
    return true;
  };

  if (!anchored_vertex(arg)) return false;
  for (int step = 1; step < n; ++step) {
    int vi = (arg + step) % n;
    if (!near_extreme(vi)) break;
    if (!anchored_vertex(vi)) return false;
  }
  for (int step = 1; step < n; ++step) {
    int vi = (arg + n - step) % n;
    if (!near_extreme(vi)) break;
    if (!anchored_vertex(vi)) return false;
  }
  return true;
}

bool SweepEngine::cert_at(double sigma, double t0, double t1) {
  const double tc = 0.5 * (t0 + t1);
  ++epoch_;
  comps_.clear();
  roots_.clear();

  auto stamped = [&](int node) { return node_epoch_[node] == epoch_; };

  for (int idx : order_) {
    const IvRec& iv = ivs_[idx];
    join_buf_.clear();
    auto add_root = [&](int c) {
      c = find(c);
      if (std::find(join_buf_.begin(), join_buf_.end(), c) == join_buf_.end()) {
        join_buf_.push_back(c);
      }
    };
    if (stamped(iv.nlo)) add_root(node_comp_[iv.nlo]);
    if (stamped(iv.nhi)) add_root(node_comp_[iv.nhi]);
    const bool wide = iv.hi - iv.lo >= 2.0 * sigma;
    for (int r : roots_) {
      if (std::find(join_buf_.begin(), join_buf_.end(), r) != join_buf_.end()) {
        continue;
      }
      if (wide && comps_[r].F >= iv.lo + 2.0 * sigma) {
        add_root(r);
        continue;
      }
      if (comps_[r].F >= iv.lo - fr_.dom_tol &&
          comp_has_inside_node(r, iv, sigma, t0, tc) &&
          comp_has_inside_node(r, iv, sigma, tc, t1)) {
        add_root(r);
      }
    }

    int target;
    if (join_buf_.empty()) {
      target = static_cast<int>(comps_.size());
      comps_.push_back({iv.hi, iv.lo, target, {}});
      roots_.push_back(target);
    } else {
      target = join_buf_[0];
      for (std::size_t j = 1; j < join_buf_.size(); ++j) {
        if (comps_[join_buf_[j]].nodes.size() > comps_[target].nodes.size()) {
          target = join_buf_[j];
        }
      }
      for (int r : join_buf_) {
        if (r == target) continue;
        comps_[r].parent = target;
        Comp& tgt = comps_[target];
        tgt.F = std::max(tgt.F, comps_[r].F);
        tgt.min_lo = std::min(tgt.min_lo, comps_[r].min_lo);
        tgt.nodes.insert(tgt.nodes.end(), comps_[r].nodes.begin(),
                         comps_[r].nodes.end());
        comps_[r].nodes.clear();
        roots_.erase(std::find(roots_.begin(), roots_.end(), r));
      }
      Comp& tgt = comps_[target];
      tgt.F = std::max(tgt.F, iv.hi);
      tgt.min_lo = std::min(tgt.min_lo, iv.lo);
    }
    Comp& tgt = comps_[target];
    if (!stamped(iv.nlo) || find(node_comp_[iv.nlo]) != target) {
      tgt.nodes.push_back(iv.nlo);
      node_comp_[iv.nlo] = target;
      node_epoch_[iv.nlo] = epoch_;
    }
    if (iv.nhi != iv.nlo &&
        (!stamped(iv.nhi) || find(node_comp_[iv.nhi]) != target)) {
      tgt.nodes.push_back(iv.nhi);
      node_comp_[iv.nhi] = target;
      node_epoch_[iv.nhi] = epoch_;
    }
  }

  for (int r : roots_) {
    bool bottom = comps_[r].min_lo <= olo_ - 2.0 * sigma ||
                  end_anchored(r, false, sigma, t0, tc, t1);
    if (!bottom) continue;
    bool top = comps_[r].F >= ohi_ + 2.0 * sigma ||
               end_anchored(r, true, sigma, t0, tc, t1);
    if (top) return true;
  }
  return false;
}

WindowOutcome SweepEngine::process(double theta, double half_width) {
  project(theta);
  WindowOutcome out;
  out.witness = witness_pass(theta);
  if (out.witness) return out;

  const double t0 = theta - half_width;
  const double t1 = theta + half_width;
  const double sigma = fr_.radius * half_width;
  out.cert_ok = cert_at(sigma, t0, t1);

  // Margin bookkeeping: bisect for the largest slack this window certifies
  // at, but only when it could lower the running minimum.
  if (out.cert_ok) {
    double probe = sigma + cur_min_margin_;
    if (probe > sigma && !cert_at(probe, t0, t1)) {
      double lo = sigma, hi = probe;
      while (hi - lo > margin_tol_) {
        double mid = 0.5 * (lo + hi);
        (cert_at(mid, t0, t1) ? lo : hi) = mid;
      }
      cur_min_margin_ = std::min(cur_min_margin_, lo - sigma);
    }
  } else {
    double lo = 0.0, hi = sigma;
    if (!cert_at(0.0, t0, t1)) {
      cur_min_margin_ = std::min(cur_min_margin_, -sigma);
    } else {
      while (hi - lo > margin_tol_) {
        double mid = 0.5 * (lo + hi);
        (cert_at(mid, t0, t1) ? lo : hi) = mid;
      }
      cur_min_margin_ = std::min(cur_min_margin_, lo - sigma);
    }
  }
  return out;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::certified_opaque:
      return "certified_opaque";
    case Verdict::non_opaque:
      return "non_opaque";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

CoverageMargin coverage_margin(const ConvexPolygon& poly,
                               const SegmentSet& segments, double theta) {
  Interval w = support_interval(poly, theta);
  std::vector<Interval> ivs;
  ivs.reserve(segments.size());
  for (const Segment& s : segments) ivs.push_back(segment_projection(s, theta));
  std::sort(ivs.begin(), ivs.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });

  CoverageMargin result;
  double frontier = w.lo;
  double best = 0.0;
  Interval best_gap;
  auto note_gap = [&](double lo, double hi) {
    if (hi <= lo) return;
    result.uncovered_length += hi - lo;
    if (hi - lo > best) {
      best = hi - lo;
      best_gap = {lo, hi};
    }
  };
  for (const Interval& iv : ivs) {
    if (frontier >= w.hi) break;
    if (iv.lo > frontier) note_gap(frontier, std::min(iv.lo, w.hi));
    frontier = std::max(frontier, iv.hi);
  }
  if (frontier < w.hi) note_gap(frontier, w.hi);
  if (best > 0.0) result.largest_gap = best_gap;
  return result;
}

OpacityCertificate verify(const ConvexPolygon& poly, const SegmentSet& segments,
                          int n_sweep, int max_refinements) {
  if (n_sweep < 16) {
    throw ParameterError("verify requires n_sweep >= 16");
  }
  if (max_refinements < 0) {
    throw ParameterError("verify requires max_refinements >= 0");
  }

  Frame fr = build_frame(poly, segments);

  OpacityCertificate cert;
  cert.n_sweep = n_sweep;
  const double delta = kPi / n_sweep;
  cert.slack = 0.5 * fr.radius * delta;

  SweepEngine engine(poly, segments, fr, cert.slack);

  struct Win {
    double theta = 0.0;
    double half = 0.0;
  };
  std::vector<Win> failing;
  long checked = 0;

  auto finish_non_opaque = [&](const WitnessLine& w) {
    cert.verdict = Verdict::non_opaque;
    cert.witness = w;
    cert.windows_checked = checked;
    cert.min_margin = engine.min_margin();
    return cert;
  };

  for (int i = 0; i < n_sweep; ++i) {
    double t = i * delta;
    WindowOutcome o = engine.process(t, 0.5 * delta);
    ++checked;
    if (o.witness) return finish_non_opaque(*o.witness);
    if (!o.cert_ok) failing.push_back({t, 0.5 * delta});
  }

  int rounds = 0;
  while (!failing.empty() && rounds < max_refinements) {
    ++rounds;
    std::vector<Win> next;
    for (const Win& w : failing) {
      const double children[2] = {w.theta - 0.5 * w.half,
                                  w.theta + 0.5 * w.half};
      for (double tc : children) {
        WindowOutcome o = engine.process(tc, 0.5 * w.half);
        ++checked;
        if (o.witness) return finish_non_opaque(*o.witness);
        if (!o.cert_ok) next.push_back({tc, 0.5 * w.half});
      }
    }
    failing = std::move(next);
  }

  cert.refinements_used = rounds;
  cert.windows_checked = checked;
  cert.min_margin = engine.min_margin();
  cert.verdict =
      failing.empty() ? Verdict::certified_opaque : Verdict::inconclusive;
  return cert;
}

bool witness_check(const ConvexPolygon& poly, const SegmentSet& segments,
                   double theta, double offset) {
  double scale = 1.0;
  for (const Point2& p : poly.vertices()) {
    scale = std::max({scale, std::fabs(p.x), std::fabs(p.y)});
  }
  for (const Segment& s : segments) {
    scale = std::max({scale, std::fabs(s.a.x), std::fabs(s.a.y),
                      std::fabs(s.b.x), std::fabs(s.b.y)});
  }
  const double tol = 1e-12 * scale;
  const Point2 u = unit_direction(theta);

  Interval w = support_interval(poly, theta);
  if (offset < w.lo - tol || offset > w.hi + tol) return false;

  for (const Segment& s : segments) {
    double da = dot(s.a, u) - offset;
    double db = dot(s.b, u) - offset;
    bool misses = (da > tol && db > tol) || (da < -tol && db < -tol);
    if (!misses) return false;
  }
  return true;
}

}  // namespace opaque
