#include "opaque/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include "opaque/errors.hpp"
#include "opaque/rng.hpp"

namespace opaque {

namespace {

double objective(const SegmentSet& segs, double bias_weight) {
  return total_length(segs) + bias_weight * static_cast<double>(segs.size());
}

}  // namespace

ShortenResult shorten(const SceneSpec& scene, const SearchConfig& config) {
  if (config.max_iters < 0) {
    throw ParameterError("shorten requires max_iters >= 0");
  }
  if (!(config.step_initial > 0.0) || !(config.step_decay > 0.0) ||
      config.step_decay > 1.0) {
    throw ParameterError("shorten requires step_initial > 0 and decay in (0,1]");
  }
  if (config.delete_probability < 0.0 || config.shrink_probability < 0.0 ||
      config.delete_probability + config.shrink_probability > 1.0) {
    throw ParameterError("move probabilities must be nonnegative, sum <= 1");
  }
  if (config.bias_weight < 0.0) {
    throw ParameterError("bias_weight must be nonnegative");
  }

  auto certified = [&](const SegmentSet& segs, int sweep, int refinements) {
    return verify(scene.domain, segs, sweep, refinements).verdict ==
           Verdict::certified_opaque;
  };

  if (!certified(scene.segments, config.search_sweep,
                 config.search_refinements)) {
    throw PreconditionError(
        "shorten requires a scene that certifies opaque at the search "
        "resolution");
  }

  SplitMix64 rng(config.seed);
  SegmentSet current = scene.segments;
  double current_obj = objective(current, config.bias_weight);

  ShortenResult result{scene, {}, {}};
  result.trace.push_back(
      {0, total_length(current), static_cast<int>(current.size())});

  for (int iter = 1; iter <= config.max_iters; ++iter) {
    if (current.empty()) break;
    double step =
        config.step_initial * std::pow(config.step_decay, iter - 1);
    SegmentSet candidate = current;
    std::uint64_t pick =
        rng.next_below(static_cast<std::uint64_t>(candidate.size()));
    Segment& seg = candidate[pick];
    double roll = rng.next_double();

    if (roll < config.delete_probability) {
      candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(pick));
    } else if (roll < config.delete_probability + config.shrink_probability) {
      // Pull one endpoint a random fraction toward the midpoint.
      Point2 mid = 0.5 * (seg.a + seg.b);
      double frac = rng.next_double();
      bool move_a = rng.next_u64() & 1;
      Point2& p = move_a ? seg.a : seg.b;
      Point2 moved = p + frac * (mid - p);
      if (distance(moved, move_a ? seg.b : seg.a) <= 1e-9) continue;
      p = moved;
    } else {
      // Perturb one endpoint inside a step-radius box.
      double dx = rng.uniform(-step, step);
      double dy = rng.uniform(-step, step);
      bool move_a = rng.next_u64() & 1;
      Point2& p = move_a ? seg.a : seg.b;
      Point2 moved = {p.x + dx, p.y + dy};
      if (distance(moved, move_a ? seg.b : seg.a) <= 1e-9) continue;
      p = moved;
    }

    double cand_obj = objective(candidate, config.bias_weight);
    if (cand_obj < current_obj - 1e-12 &&
        certified(candidate, config.search_sweep, config.search_refinements)) {
      current = std::move(candidate);
      current_obj = cand_obj;
      result.trace.push_back(
          {iter, total_length(current), static_cast<int>(current.size())});
    }
  }

  // The accepted scene must also certify at the final resolution; if the
  // coarse sweep let something through, fall back to the input scene.
  if (!certified(current, config.final_sweep, config.final_refinements)) {
    current = scene.segments;
  }
  result.best.segments = current;
  result.best.expected_length = std::nullopt;
  result.best.expected_opaque = true;
  result.certificate =
      verify(scene.domain, current, config.final_sweep,
             config.final_refinements);
  return result;
}

}  // namespace opaque
