#include "hmb/shading.hpp"

#include <algorithm>

namespace hmb {

Rgb shade(const HitRecord& hit, std::span<const Light> lights, double ambient) {
    double irradiance = ambient;
    for (const auto& light : lights) {
        const Vec3 to_light = light.type == LightType::Directional
                                  ? normalize(light.direction)
                                  : normalize(light.position - hit.point);
        irradiance += light.intensity * std::max(0.0, dot(hit.normal, to_light));
    }
    return clamp01(hit.albedo * irradiance);
}

}  // namespace hmb
