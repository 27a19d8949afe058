#pragma once

#include <span>

#include "hmb/bvh.hpp"

namespace hmb {

/// Lambertian response plus constant ambient, clamped to [0,1]. No shadow rays.
Rgb shade(const HitRecord& hit, std::span<const Light> lights, double ambient);

inline Rgb shade(const HitRecord& hit, const Scene& scene) {
    return shade(hit, scene.lights, scene.ambient);
}

/// Rec.709 luma weights.
constexpr double luminance(const Rgb& c) { return 0.2126 * c.r + 0.7152 * c.g + 0.0722 * c.b; }

}  // namespace hmb
