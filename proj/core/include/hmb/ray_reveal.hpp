#pragma once

#include "hmb/bvh.hpp"
#include "hmb/gbuffer.hpp"

namespace hmb {

struct RevealParams {
    int max_recursion = 5;
    double luminance_epsilon = 0.02;
    double advance_epsilon = 1e-4;  // meters

    void validate() const;
};

struct RevealRecord {
    Rgb color;
    double depth = kInfinity;
    Vec2 velocity;
    bool valid = false;
};

/// Background layer recovered behind masked pixels. Invalid everywhere outside the mask.
struct RevealBuffers {
    Image color;
    Plane<double> depth;
    Plane<Vec2> velocity;
    Mask valid;
    int chains_traced = 0;  // one per masked pixel
    long rays_cast = 0;     // every segment, first hit included

    RevealBuffers() = default;
    RevealBuffers(int width, int height);

    int width() const { return color.width(); }
    int height() const { return color.height(); }

    RevealRecord record(int x, int y) const;
    void set(int x, int y, const RevealRecord& rec);
};

struct RevealTrace {
    RevealRecord record;
    int rays_cast = 0;
};

/// Follows the pixel's primary ray past its first hit, respawning just beyond each hit point,
/// until the shaded luminance differs from the first hit by more than luminance_epsilon.
/// An escaping ray yields the background color at infinite depth, still valid. Running out of
/// recursion yields an invalid record.
RevealTrace trace_reveal(const Scene& scene, const Bvh& bvh, int x, int y,
                         const RevealParams& params);

inline RevealRecord reveal_pixel(const Scene& scene, const Bvh& bvh, int x, int y,
                                 const RevealParams& params) {
    return trace_reveal(scene, bvh, x, y, params).record;
}

/// Applies reveal_pixel to exactly the masked pixels that hold a G-buffer hit.
RevealBuffers reveal_pass(const Scene& scene, const Bvh& bvh, const FrameBuffers& buffers,
                          const Mask& mask, const RevealParams& params);

}  // namespace hmb
