#pragma once

#include <cstdint>
#include <optional>

#include "hmb/gbuffer.hpp"
#include "hmb/ray_reveal.hpp"
#include "hmb/tiles.hpp"

namespace hmb {

/// Which side of the target the end-anchored gather range extends to.
enum class SampleDirection {
    Leading,   // p + f * v_N: toward where the surface is heading at the end of exposure
    Trailing,  // p - f * v_N: back along the path it came from
};

struct FilterParams {
    int sample_count = 15;           // S, the target itself included
    double soft_z_extent = 0.03;     // meters
    double fg_edge_boost = 30.0;     // w_f multiplier for samples shallower than the target
    double mask_bg_factor = 3.0;     // composite background/foreground magnification inside the mask
    TileParams tile;
    SampleDirection direction = SampleDirection::Leading;
    bool jitter = false;             // per-pixel offset of the sample positions
    std::uint64_t jitter_seed = 0;

    void validate() const;
};

/// Per-sample contribution. w == w_f + w_b + w_s.
struct WeightTerms {
    double w_f = 0.0;  // sample covers the target as foreground
    double w_b = 0.0;  // sample shows through behind the moving target
    double w_s = 0.0;  // both blur into each other
    double w = 0.0;
};

constexpr double saturate(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

/// Cubic Hermite step; throws std::invalid_argument unless a < b.
double smoothstep(double a, double b, double x);

/// 1 - smoothstep(0.95 v, 1.05 v, s). For v = 0 the interval collapses: 1 at s = 0, else 0.
double cylinder(double v, double s);

/// Depths in camera-space meters, speeds in pixels per exposure, delta_s in pixels.
WeightTerms sample_weight(double z_target, double z_sample, double v_target, double v_sample,
                          double delta_s, double soft_z_extent);

/// View of the planes one gather reads. `valid` may be null, meaning every pixel is usable.
struct BlurSource {
    const Image* color = nullptr;
    const Plane<double>* depth = nullptr;
    const Plane<Vec2>* velocity = nullptr;
    const Mask* valid = nullptr;

    static BlurSource from(const FrameBuffers& fb) {
        return {&fb.color, &fb.depth, &fb.velocity, nullptr};
    }
    static BlurSource from(const RevealBuffers& rb) {
        return {&rb.color, &rb.depth, &rb.velocity, &rb.valid};
    }

    int width() const { return color->width(); }
    int height() const { return color->height(); }
    bool usable(int x, int y) const { return valid == nullptr || valid->at(x, y) != 0; }
};

struct BlurOutput {
    Image color;
    Plane<double> fg_weight_sum;  // sum of (boosted) w_f over gathered samples
    Plane<double> bg_weight_sum;  // sum of w_b + w_s over gathered samples
    Plane<double> total_weight;   // normalization weight: 1 for the target plus every sample w;
                                  // 0 where the target itself was unusable

    BlurOutput() = default;
    BlurOutput(int width, int height);
};

/// Dominant neighborhoods below this speed are left unblurred.
inline constexpr double kMinBlurSpeed = 0.5;

/// Gathers S samples over one dominant-neighborhood velocity with the target at the end of the
/// range. The target contributes with weight 1; unusable samples are skipped.
BlurOutput gather_blur(const BlurSource& input, const TileGrid& tiles, const FilterParams& params);

/// Off the mask: raster blur. Inside: blends raster and reveal blurs with the foreground
/// weight divided and the background weight multiplied by mask_bg_factor. A reveal blur with
/// zero total weight marks an invalid record, and the pixel keeps the raster blur.
Image composite(const BlurOutput& pp_raster, const BlurOutput& pp_reveal, const Mask& mask,
                const FilterParams& params);

}  // namespace hmb
