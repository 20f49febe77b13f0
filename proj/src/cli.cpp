#include "opaque/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "opaque/bounds.hpp"
#include "opaque/constructions.hpp"
#include "opaque/errors.hpp"
#include "opaque/optimizer.hpp"
#include "opaque/scene_io.hpp"

namespace opaque::cli {

namespace {

SceneSpec read_scene(const std::string& path) {
  if (path == "-") {
    return load_scene(std::cin);
  }
  return load_scene_file(path);
}

void write_output(const std::string& text, const std::string& out_path,
                  std::ostream& out) {
  if (out_path.empty() || out_path == "-") {
    out << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) {
    throw ValidationError("cannot open output file '" + out_path + "'");
  }
  f << text;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int run_generate(const std::string& name, double side, double rect_w,
                 double rect_h, int n_arc, std::uint64_t seed, int n_vertices,
                 int n_segments, const std::string& out_path,
                 std::ostream& out) {
  std::optional<SceneSpec> scene;
  if (name == "square_boundary") {
    scene = square_boundary();
  } else if (name == "square_conjectured") {
    scene = square_conjectured();
  } else if (name == "triangle_tripod") {
    scene = triangle_tripod(side);
  } else if (name == "rectangle_three_sides") {
    scene = rectangle_three_sides(rect_w, rect_h);
  } else if (name == "disk_half_circle_whiskers") {
    scene = disk_half_circle_whiskers(n_arc);
  } else if (name == "random") {
    scene = random_scene(seed, n_vertices, n_segments);
  } else {
    throw ParameterError(
        "unknown scene name '" + name +
        "' (expected square_boundary, square_conjectured, triangle_tripod, "
        "rectangle_three_sides, disk_half_circle_whiskers or random)");
  }
  write_output(serialize_scene(*scene), out_path, out);
  return 0;
}

int run_verify(const SceneSpec& scene, int n_sweep, int max_refinements,
               std::ostream& out) {
  OpacityCertificate cert =
      verify(scene.domain, scene.segments, n_sweep, max_refinements);
  out << "verdict = " << to_string(cert.verdict) << "\n";
  if (cert.witness) {
    out << "witness theta=" << fmt(cert.witness->theta)
        << " offset=" << fmt(cert.witness->offset) << "\n";
  }
  out << "min_margin = " << fmt(cert.min_margin) << "\n";
  switch (cert.verdict) {
    case Verdict::certified_opaque:
      return 0;
    case Verdict::non_opaque:
      return 2;
    case Verdict::inconclusive:
      return 3;
  }
  return 3;
}

int run_audit(const SceneSpec& scene, const AuditConfig& config,
              const std::string& out_path, std::ostream& out) {
  AuditReport report = audit(scene.domain, scene.segments, scene.name, config);
  write_output(format_report(report), out_path, out);
  return report.all_satisfied ? 0 : 4;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"opaque-set verification and audit for convex domains"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "emit a named scene as JSON");
  std::string gen_name;
  double gen_side = 1.0, gen_w = 1.0, gen_h = 0.5;
  int gen_n_arc = 1024, gen_vertices = 16, gen_segments = 8;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--name", gen_name, "scene family name")->required();
  gen->add_option("--side", gen_side, "triangle side length");
  gen->add_option("--width", gen_w, "rectangle width");
  gen->add_option("--height", gen_h, "rectangle height");
  gen->add_option("--n-arc", gen_n_arc, "quarter-arc resolution");
  gen->add_option("--seed", gen_seed, "random stream seed");
  gen->add_option("--n-vertices", gen_vertices, "random hull sample count");
  gen->add_option("--n-segments", gen_segments, "random segment count");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // verify
  auto* ver = app.add_subcommand("verify", "certified opacity check");
  std::string ver_scene = "-";
  int ver_sweep = 65536, ver_refine = 4;
  ver->add_option("scene", ver_scene, "scene file or - for stdin");
  ver->add_option("--sweep", ver_sweep, "base sweep resolution");
  ver->add_option("--refinements", ver_refine, "max refinement rounds");

  // audit
  auto* aud = app.add_subcommand("audit", "measure and check one scene");
  std::string aud_scene = "-", aud_out;
  AuditConfig aud_cfg;
  aud->add_option("scene", aud_scene, "scene file or - for stdin");
  aud->add_option("--grid", aud_cfg.n_grid, "profile grid size");
  aud->add_option("--sweep", aud_cfg.n_sweep, "sweep resolution");
  aud->add_option("--refinements", aud_cfg.max_refinements,
                  "max refinement rounds");
  aud->add_option("--lmax", aud_cfg.ell_max, "frequency truncation");
  aud->add_option("--crofton-max", aud_cfg.crofton_max_segments,
                  "segment-count cap for pair energy");
  aud->add_option("--out", aud_out, "output file (default stdout)");

  // profile
  auto* prof = app.add_subcommand("profile", "CSV of f, g and their gap");
  std::string prof_scene = "-", prof_out;
  int prof_n = 8192;
  prof->add_option("scene", prof_scene, "scene file or - for stdin");
  prof->add_option("--n", prof_n, "grid size");
  prof->add_option("--out", prof_out, "output file (default stdout)");

  // render
  auto* ren = app.add_subcommand("render", "SVG picture of a scene");
  std::string ren_scene = "-", ren_out;
  int ren_size = 640;
  ren->add_option("scene", ren_scene, "scene file or - for stdin");
  ren->add_option("--size", ren_size, "image width in pixels");
  ren->add_option("--out", ren_out, "output file (default stdout)");

  // optimize
  auto* opt = app.add_subcommand("optimize", "greedy scene shortening");
  std::string opt_scene = "-", opt_out, opt_trace;
  SearchConfig opt_cfg;
  opt->add_option("scene", opt_scene, "scene file or - for stdin");
  opt->add_option("--seed", opt_cfg.seed, "random stream seed");
  opt->add_option("--iters", opt_cfg.max_iters, "iteration budget");
  opt->add_option("--step", opt_cfg.step_initial, "initial perturbation");
  opt->add_option("--decay", opt_cfg.step_decay, "per-iteration step decay");
  opt->add_option("--delete-prob", opt_cfg.delete_probability,
                  "probability of a delete move");
  opt->add_option("--shrink-prob", opt_cfg.shrink_probability,
                  "probability of a shrink move");
  opt->add_option("--bias", opt_cfg.bias_weight, "segment-count penalty");
  opt->add_option("--sweep", opt_cfg.search_sweep, "in-loop sweep resolution");
  opt->add_option("--final-sweep", opt_cfg.final_sweep,
                  "final certificate resolution");
  opt->add_option("--out", opt_out, "output file (default stdout)");
  opt->add_option("--trace", opt_trace, "CSV trace of accepted moves");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (gen->parsed()) {
      return run_generate(gen_name, gen_side, gen_w, gen_h, gen_n_arc,
                          gen_seed, gen_vertices, gen_segments, gen_out, out);
    }
    if (ver->parsed()) {
      return run_verify(read_scene(ver_scene), ver_sweep, ver_refine, out);
    }
    if (aud->parsed()) {
      return run_audit(read_scene(aud_scene), aud_cfg, aud_out, out);
    }
    if (prof->parsed()) {
      SceneSpec scene = read_scene(prof_scene);
      ShadowProfile profile = sample_profile(
          scene.domain, measure_of_segments(scene.segments), prof_n);
      write_output(profile_csv(profile), prof_out, out);
      return 0;
    }
    if (ren->parsed()) {
      write_output(render_svg(read_scene(ren_scene), ren_size), ren_out, out);
      return 0;
    }
    if (opt->parsed()) {
      ShortenResult result = shorten(read_scene(opt_scene), opt_cfg);
      err << "length " << fmt(result.trace.front().length) << " -> "
          << fmt(result.trace.back().length) << " in "
          << result.trace.size() - 1 << " accepted moves\n";
      if (!opt_trace.empty()) {
        std::string csv = "iter,length,segments\n";
        for (const TracePoint& t : result.trace) {
          csv += std::to_string(t.iter) + "," + fmt(t.length) + "," +
                 std::to_string(t.segments) + "\n";
        }
        write_output(csv, opt_trace, out);
      }
      write_output(serialize_scene(result.best), opt_out, out);
      return 0;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InconsistentSceneError& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

int run(const std::vector<std::string>& args) {
  return run(args, std::cout, std::cerr);
}

int run_main(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace opaque::cli
