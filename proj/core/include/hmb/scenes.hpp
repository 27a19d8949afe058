#pragma once

#include <cstdint>

#include "hmb/scene_io.hpp"

namespace hmb::scenes {

// Procedural scenes. Every camera sits at the origin looking down -z, so camera-space depth is
// -z and +x moves right on screen.

/// World distance at `depth` that projects to `pixels` on screen.
double pixels_to_world(const Camera& camera, double pixels, double depth);

/// Red quad at 2 m moving right 30 px per exposure over a static white quad at 3 m that fills
/// the view.
SceneFile two_quads();

/// Fast occluder at 1.5 m crossing a static checkered backdrop at 3 m; the partial-occlusion
/// comparison scene.
SceneFile occluder_pattern();

/// Single moving quad over a contrasting backdrop at a small resolution.
SceneFile moving_quad(int width = 80, int height = 60);

/// Boxes and quads at several depths, nothing moving.
SceneFile static_boxes();

/// Random quads at random depths and velocities (some beyond the tile clamp) over a backdrop.
SceneFile random_quads(std::uint64_t seed, int width = 160, int height = 120);

}  // namespace hmb::scenes
