#pragma once

#include <cstdint>
#include <vector>

#include "opaque/constructions.hpp"
#include "opaque/opacity.hpp"

namespace opaque {

// Greedy local-search settings.  All candidate moves are re-verified before
// acceptance, so the result is always certified opaque.
struct SearchConfig {
  std::uint64_t seed = 1;
  int max_iters = 200;
  double step_initial = 0.05;   // endpoint perturbation radius
  double step_decay = 0.98;     // multiplied in per iteration
  double delete_probability = 0.25;
  double shrink_probability = 0.25;
  // Penalty weight on segment count added to the objective (0 = pure length).
  double bias_weight = 0.0;
  int search_sweep = 8192;      // sweep resolution inside the loop
  int search_refinements = 2;
  int final_sweep = 65536;      // resolution of the final certificate
  int final_refinements = 4;
};

struct TracePoint {
  int iter = 0;
  double length = 0.0;
  int segments = 0;
};

struct ShortenResult {
  SceneSpec best;
  OpacityCertificate certificate;  // final-resolution certificate of `best`
  std::vector<TracePoint> trace;   // recorded at every accepted move
};

// Greedy shortening: perturb an endpoint, shrink a segment toward its
// midpoint, or delete a segment; keep the move only if the scene still
// certifies opaque and the objective improves.  Deterministic for a fixed
// seed and config.  Throws PreconditionError when the input scene does not
// certify opaque at the search resolution, and ParameterError for invalid
// settings.
ShortenResult shorten(const SceneSpec& scene, const SearchConfig& config = {});

}  // namespace opaque
