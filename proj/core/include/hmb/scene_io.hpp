#pragma once

#include <optional>
#include <string>

#include "hmb/scene.hpp"

namespace hmb {

/// A scene plus the scene-dependent filter settings a file may carry.
struct SceneFile {
    Scene scene;
    std::optional<double> soft_z_extent;
    std::optional<double> edge_threshold;
};

/// JSON scene description. Mesh primitives: "quad" (4 vertices), "box" (2 corner vertices,
/// min then max) and "tris" (a multiple of 3 vertices). Throws std::runtime_error with the
/// offending key on malformed input.
SceneFile parse_scene(const std::string& json_text);
SceneFile load_scene(const std::string& path);

/// Writes every mesh as "tris", so a reload reproduces the triangles bit for bit.
std::string serialize_scene(const SceneFile& file);
void save_scene(const std::string& path, const SceneFile& file);

}  // namespace hmb
