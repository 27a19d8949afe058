#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hmb/ground_truth.hpp"
#include "hmb/motion_blur.hpp"
#include "hmb/ray_mask.hpp"
#include "hmb/ray_reveal.hpp"
#include "hmb/scene_io.hpp"

namespace hmb {

enum class RenderMode { Raster, PostProcess, Hybrid, GroundTruth };

std::optional<RenderMode> parse_render_mode(const std::string& name);
const char* to_string(RenderMode mode);

struct PipelineParams {
    FilterParams filter;   // filter.tile holds m and n
    RayMaskParams mask;
    RevealParams reveal;
    OracleParams oracle;
    bool enable_reveal = true;

    /// Defaults, with the scene file's soft z extent and edge threshold when present.
    static PipelineParams for_scene(const SceneFile& file);

    void set_soft_z_extent(double meters) {
        filter.soft_z_extent = meters;
        mask.soft_z_extent = meters;
    }

    /// Validates the stages `mode` runs against the scene's resolution; throws
    /// std::invalid_argument.
    void validate(const Scene& scene, RenderMode mode) const;
};

struct PassTiming {
    std::string pass;
    double milliseconds = 0.0;
};

/// Every intermediate an invocation produced; stages a mode skips stay empty.
struct PipelineResult {
    RenderMode mode = RenderMode::Raster;
    FrameBuffers gbuffer;
    RayMaskStages masks;
    RevealBuffers reveal;
    TileGrid raster_tiles;
    TileGrid reveal_tiles;
    BlurOutput raster_blur;
    BlurOutput reveal_blur;
    Image output;
    std::vector<PassTiming> timings;
};

/// Pass order for hybrid: G-buffer, ray mask, ray reveal, tile-dilate (raster and reveal),
/// post-process (raster and reveal), composite.
PipelineResult run_pipeline(const Scene& scene, RenderMode mode, const PipelineParams& params);

}  // namespace hmb
