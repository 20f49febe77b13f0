#include "opaque/scene_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "opaque/errors.hpp"

namespace opaque {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& where) {
  if (!j.is_number()) {
    throw ValidationError(where + ": expected a number");
  }
  double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw ValidationError(where + ": value is not finite");
  }
  return v;
}

Point2 require_point(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) {
    throw ValidationError(where + ": expected a point as [x, y]");
  }
  return {require_number(j[0], where + "[0]"),
          require_number(j[1], where + "[1]")};
}

ConvexPolygon parse_domain(const json& j) {
  if (!j.is_object()) {
    throw ValidationError("domain: expected an object");
  }
  std::string type = j.value("type", "polygon");
  auto build = [](std::vector<Point2> verts) {
    try {
      return ConvexPolygon(std::move(verts));
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("domain: ") + e.what());
    }
  };
  try {
    if (type == "polygon") {
      if (!j.contains("vertices") || !j["vertices"].is_array()) {
        throw ValidationError("domain.vertices: expected an array of points");
      }
      std::vector<Point2> verts;
      std::size_t i = 0;
      for (const json& v : j["vertices"]) {
        verts.push_back(
            require_point(v, "domain.vertices[" + std::to_string(i++) + "]"));
      }
      return build(std::move(verts));
    }
    if (type == "rectangle") {
      double w = require_number(j.at("width"), "domain.width");
      double h = require_number(j.at("height"), "domain.height");
      if (w <= 0.0 || h <= 0.0) {
        throw ValidationError("domain: rectangle sides must be positive");
      }
      return build({{0, 0}, {w, 0}, {w, h}, {0, h}});
    }
    if (type == "regular_ngon") {
      if (!j.contains("n") || !j["n"].is_number_integer()) {
        throw ValidationError("domain.n: expected an integer");
      }
      long n = j["n"].get<long>();
      double r = j.contains("radius")
                     ? require_number(j["radius"], "domain.radius")
                     : 1.0;
      if (n < 3 || r <= 0.0) {
        throw ValidationError("domain: regular_ngon needs n >= 3, radius > 0");
      }
      std::vector<Point2> verts(static_cast<std::size_t>(n));
      for (long k = 0; k < n; ++k) {
        double a = kTau * static_cast<double>(k) / static_cast<double>(n);
        verts[static_cast<std::size_t>(k)] = {r * std::cos(a),
                                              r * std::sin(a)};
      }
      return build(std::move(verts));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("domain: ") + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("domain: ") + e.what());
  }
  throw ValidationError("domain.type: unknown type '" + type + "'");
}

}  // namespace

SceneSpec parse_scene(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("scene JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw ValidationError("scene: expected a JSON object");
  }
  if (!j.contains("domain")) {
    throw ValidationError("scene: missing required key 'domain'");
  }
  if (!j.contains("segments") || !j["segments"].is_array()) {
    throw ValidationError("scene: missing required array 'segments'");
  }

  ConvexPolygon domain = parse_domain(j["domain"]);

  SegmentSet segs;
  std::size_t i = 0;
  for (const json& s : j["segments"]) {
    std::string where = "segments[" + std::to_string(i++) + "]";
    if (!s.is_array() || s.size() != 2) {
      throw ValidationError(where + ": expected [[x1,y1],[x2,y2]]");
    }
    Point2 a = require_point(s[0], where + "[0]");
    Point2 b = require_point(s[1], where + "[1]");
    try {
      segs.emplace_back(a, b);
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }

  SceneSpec scene{j.value("name", "scene"), std::move(domain), std::move(segs),
                  std::nullopt, std::nullopt};
  if (j.contains("expected_length")) {
    scene.expected_length =
        require_number(j["expected_length"], "expected_length");
  }
  if (j.contains("expected_opaque")) {
    if (!j["expected_opaque"].is_boolean()) {
      throw ValidationError("expected_opaque: expected a boolean");
    }
    scene.expected_opaque = j["expected_opaque"].get<bool>();
  }
  return scene;
}

SceneSpec load_scene(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str());
}

SceneSpec load_scene_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open scene file '" + path + "'");
  }
  return load_scene(in);
}

std::string serialize_scene(const SceneSpec& scene) {
  json j;
  j["name"] = scene.name;
  json verts = json::array();
  for (const Point2& p : scene.domain.vertices()) {
    verts.push_back(json::array({p.x, p.y}));
  }
  j["domain"] = {{"type", "polygon"}, {"vertices", verts}};
  json segs = json::array();
  for (const Segment& s : scene.segments) {
    segs.push_back(json::array({json::array({s.a.x, s.a.y}),
                                json::array({s.b.x, s.b.y})}));
  }
  j["segments"] = segs;
  if (scene.expected_length) j["expected_length"] = *scene.expected_length;
  if (scene.expected_opaque) j["expected_opaque"] = *scene.expected_opaque;
  return j.dump(2) + "\n";
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void kv(std::string& out, const std::string& key, const std::string& value) {
  out += key;
  out += " = ";
  out += value;
  out += "\n";
}

void kv(std::string& out, const std::string& key, double value) {
  kv(out, key, fmt(value));
}

void kv(std::string& out, const std::string& key, bool value) {
  kv(out, key, std::string(value ? "1" : "0"));
}

void kv(std::string& out, const std::string& key, long value) {
  kv(out, key, std::to_string(value));
}

}  // namespace

std::string format_report(const AuditReport& r) {
  std::string out;
  kv(out, "scene", r.scene_name);
  kv(out, "segments", static_cast<long>(r.segment_count));
  kv(out, "length", r.length);
  kv(out, "perimeter", r.perimeter);
  kv(out, "length_lower_bound", r.length_lower_bound);
  kv(out, "length_excess", r.length_excess);
  kv(out, "verdict", to_string(r.verdict));
  if (r.witness) {
    kv(out, "witness_theta", r.witness->theta);
    kv(out, "witness_offset", r.witness->offset);
  }
  kv(out, "n_sweep", static_cast<long>(r.n_sweep));
  kv(out, "refinements_used", static_cast<long>(r.refinements_used));
  kv(out, "slack", r.slack);
  kv(out, "min_margin", r.min_margin);
  kv(out, "windows_checked", r.windows_checked);
  kv(out, "integral_gap", r.integral_gap);
  kv(out, "gap_identity_residual", r.gap_identity_residual);
  kv(out, "gap_identity_ok", r.gap_identity_ok);
  kv(out, "l2_gap_quadrature", r.l2_gap_quadrature);
  kv(out, "l2_gap_parseval", r.l2_gap_parseval);
  kv(out, "l2_gap_tail", r.l2_gap_tail);
  kv(out, "checks_applicable", r.checks_applicable);
  if (r.checks_applicable) {
    kv(out, "gap_energy_rhs", r.gap_energy.rhs);
    kv(out, "gap_energy_conservative_rhs", r.gap_energy.conservative_rhs);
    kv(out, "gap_energy_satisfied", r.gap_energy.satisfied);
    kv(out, "stability_lhs", r.stability.lhs);
    kv(out, "stability_tail", r.stability.lhs_tail);
    kv(out, "stability_rhs", r.stability.rhs);
    kv(out, "stability_satisfied", r.stability.satisfied);
  }
  kv(out, "concentration_applicable", r.concentration_applicable);
  if (r.concentration_applicable) {
    kv(out, "concentration_rows", static_cast<long>(r.concentration.size()));
    for (std::size_t i = 0; i < r.concentration.size(); ++i) {
      std::string prefix = "concentration_" + std::to_string(i + 1);
      kv(out, prefix + "_beta", r.concentration[i].beta);
      kv(out, prefix + "_lhs", r.concentration[i].lhs);
      kv(out, prefix + "_rhs", r.concentration[i].rhs);
      kv(out, prefix + "_satisfied", r.concentration[i].satisfied);
    }
    kv(out, "concentration_satisfied", r.concentration_satisfied);
  }
  kv(out, "max_gap", r.max_gap_value);
  kv(out, "max_gap_theta", r.max_gap_theta);
  if (r.checks_applicable) {
    kv(out, "max_gap_bound", r.max_gap_bound);
    kv(out, "max_gap_ok", r.max_gap_ok);
  }
  kv(out, "lipschitz_f", r.lipschitz_f);
  kv(out, "lipschitz_g", r.lipschitz_g);
  kv(out, "crofton_computed", r.crofton_computed);
  if (r.crofton_computed) {
    kv(out, "crofton", r.crofton);
  }
  kv(out, "config_n_grid", static_cast<long>(r.config.n_grid));
  kv(out, "config_n_sweep", static_cast<long>(r.config.n_sweep));
  kv(out, "config_max_refinements",
     static_cast<long>(r.config.max_refinements));
  kv(out, "config_ell_max", static_cast<long>(r.config.ell_max));
  kv(out, "config_crofton_max_segments",
     static_cast<long>(r.config.crofton_max_segments));
  kv(out, "all_satisfied", r.all_satisfied);
  return out;
}

std::string profile_csv(const ShadowProfile& profile) {
  std::string out = "theta,f,g,gap\n";
  for (int i = 0; i < profile.n_grid; ++i) {
    out += fmt(profile.theta[i]);
    out += ',';
    out += fmt(profile.f[i]);
    out += ',';
    out += fmt(profile.g[i]);
    out += ',';
    out += fmt(profile.gap[i]);
    out += '\n';
  }
  return out;
}

std::string render_svg(const SceneSpec& scene, int size_px) {
  if (size_px < 16) {
    throw ParameterError("render_svg requires size_px >= 16");
  }
  double xmin = scene.domain.vertices()[0].x, xmax = xmin;
  double ymin = scene.domain.vertices()[0].y, ymax = ymin;
  auto grow = [&](Point2 p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  };
  for (const Point2& p : scene.domain.vertices()) grow(p);
  for (const Segment& s : scene.segments) {
    grow(s.a);
    grow(s.b);
  }
  double span = std::max(xmax - xmin, ymax - ymin);
  if (span <= 0.0) span = 1.0;
  double margin = 0.05 * span;
  double scale = size_px / (span + 2.0 * margin);
  double w = (xmax - xmin + 2.0 * margin) * scale;
  double h = (ymax - ymin + 2.0 * margin) * scale;
  auto X = [&](double x) { return (x - xmin + margin) * scale; };
  auto Y = [&](double y) { return (ymax - y + margin) * scale; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
      << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  svg << "<polygon points=\"";
  for (const Point2& p : scene.domain.vertices()) {
    svg << X(p.x) << "," << Y(p.y) << " ";
  }
  svg << "\" fill=\"none\" stroke=\"black\" stroke-width=\""
      << 0.004 * size_px << "\"/>\n";

  for (const Segment& s : scene.segments) {
    // Hue encodes twice the direction angle, so antipodal directions match.
    double hue = wrap_angle(2.0 * s.angle()) * 180.0 / kPi;
    svg << "<line x1=\"" << X(s.a.x) << "\" y1=\"" << Y(s.a.y) << "\" x2=\""
        << X(s.b.x) << "\" y2=\"" << Y(s.b.y) << "\" stroke=\"hsl("
        << hue << ",90%,45%)\" stroke-width=\"" << 0.006 * size_px
        << "\" stroke-linecap=\"round\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace opaque
