#include "hmb/pipeline.hpp"

#include <chrono>
#include <stdexcept>

namespace hmb {

namespace {

class PassClock {
public:
    explicit PassClock(std::vector<PassTiming>& sink) : sink_(sink) {}

    template <typename F>
    auto time(const char* pass, F&& body) {
        const auto start = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(body())>) {
            body();
            record(pass, start);
        } else {
            auto value = body();
            record(pass, start);
            return value;
        }
    }

private:
    void record(const char* pass, std::chrono::steady_clock::time_point start) {
        const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - start;
        sink_.push_back({pass, dt.count()});
    }

    std::vector<PassTiming>& sink_;
};

TileGrid tile_dilate(const Plane<Vec2>& velocity, const TileParams& tile) {
    return neighbor_max(tile_max(velocity, tile), tile.n);
}

}  // namespace

std::optional<RenderMode> parse_render_mode(const std::string& name) {
    if (name == "raster") return RenderMode::Raster;
    if (name == "postprocess") return RenderMode::PostProcess;
    if (name == "hybrid") return RenderMode::Hybrid;
    if (name == "groundtruth") return RenderMode::GroundTruth;
    return std::nullopt;
}

const char* to_string(RenderMode mode) {
    switch (mode) {
        case RenderMode::Raster: return "raster";
        case RenderMode::PostProcess: return "postprocess";
        case RenderMode::Hybrid: return "hybrid";
        case RenderMode::GroundTruth: return "groundtruth";
    }
    return "unknown";
}

PipelineParams PipelineParams::for_scene(const SceneFile& file) {
    PipelineParams p;
    if (file.soft_z_extent) {
        p.set_soft_z_extent(*file.soft_z_extent);
    }
    if (file.edge_threshold) {
        p.mask.edge_threshold = *file.edge_threshold;
    }
    return p;
}

void PipelineParams::validate(const Scene& scene, RenderMode mode) const {
    scene.validate();
    if (mode == RenderMode::GroundTruth) {
        oracle.validate();
        return;
    }
    if (mode != RenderMode::Raster) {
        filter.tile.validate(scene.camera.width, scene.camera.height);
        filter.validate();
    }
    if (mode == RenderMode::Hybrid) {
        mask.validate();
        reveal.validate();
    }
}

PipelineResult run_pipeline(const Scene& scene, RenderMode mode, const PipelineParams& params) {
    params.validate(scene, mode);
    PipelineResult r;
    r.mode = mode;
    PassClock clock(r.timings);

    if (mode == RenderMode::GroundTruth) {
        r.output = clock.time("Ground Truth", [&] { return render_ground_truth(scene, params.oracle); });
        return r;
    }

    const bool has_geometry = scene.triangle_count() > 0;
    std::optional<Bvh> bvh;
    if (has_geometry) {
        bvh = clock.time("BVH Build", [&] { return build_bvh(scene, 1.0); });
    }
    r.gbuffer = clock.time("G-Buffer", [&] {
        return has_geometry ? render_gbuffer(scene, *bvh)
                            : FrameBuffers(scene.camera.width, scene.camera.height, scene.background);
    });
    if (mode == RenderMode::Raster) {
        r.output = r.gbuffer.color;
        return r;
    }

    const int w = r.gbuffer.width();
    const int h = r.gbuffer.height();
    const bool hybrid = mode == RenderMode::Hybrid;
    const bool reveal = hybrid && params.enable_reveal && has_geometry;

    if (hybrid) {
        r.masks = clock.time("Ray Mask", [&] {
            if (reveal) {
                return build_ray_mask(r.gbuffer, params.mask);
            }
            return RayMaskStages{Mask(w, h, 0), Mask(w, h, 0), Mask(w, h, 0)};
        });
        r.reveal = clock.time("Ray Trace", [&] {
            return reveal ? reveal_pass(scene, *bvh, r.gbuffer, r.masks.ray_mask, params.reveal)
                          : RevealBuffers(w, h);
        });
    }

    clock.time("Tile-Dilate", [&] {
        r.raster_tiles = tile_dilate(r.gbuffer.velocity, params.filter.tile);
        if (hybrid) {
            r.reveal_tiles = tile_dilate(r.reveal.velocity, params.filter.tile);
        }
    });

    clock.time("PP-Composite", [&] {
        r.raster_blur = gather_blur(BlurSource::from(r.gbuffer), r.raster_tiles, params.filter);
        if (!hybrid) {
            r.output = r.raster_blur.color;
            return;
        }
        r.reveal_blur = gather_blur(BlurSource::from(r.reveal), r.reveal_tiles, params.filter);
        r.output = composite(r.raster_blur, r.reveal_blur, r.masks.ray_mask, params.filter);
    });
    return r;
}

}  // namespace hmb
