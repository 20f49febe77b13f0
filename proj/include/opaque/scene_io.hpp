#pragma once

#include <iosfwd>
#include <string>

#include "opaque/bounds.hpp"
#include "opaque/constructions.hpp"
#include "opaque/shadows.hpp"

namespace opaque {

// Parse a scene from its JSON text.  Malformed input raises ValidationError
// with a field-addressed message.  Schema (see README):
//   {
//     "name": "...",                        optional
//     "domain": {"type": "polygon", "vertices": [[x,y], ...]}
//             | {"type": "rectangle", "width": w, "height": h}
//             | {"type": "regular_ngon", "n": k, "radius": r},
//     "segments": [[[x1,y1],[x2,y2]], ...],
//     "expected_length": 1.23,              optional
//     "expected_opaque": true               optional
//   }
SceneSpec parse_scene(const std::string& text);

SceneSpec load_scene(std::istream& in);
SceneSpec load_scene_file(const std::string& path);

// Round-trippable JSON for a scene.
std::string serialize_scene(const SceneSpec& scene);

// Flat deterministic "key = value" report; floating-point values are
// printed with 17 significant digits so reruns compare bit-for-bit.
std::string format_report(const AuditReport& report);

// CSV with header theta,f,g,gap.
std::string profile_csv(const ShadowProfile& profile);

// Standalone SVG picture of the scene: domain outline in black, segments
// stroked with a hue encoding twice their direction angle.
std::string render_svg(const SceneSpec& scene, int size_px = 640);

}  // namespace opaque
