#include "hmb/ground_truth.hpp"

#include <stdexcept>

#include "hmb/bvh.hpp"
#include "hmb/parallel.hpp"
#include "hmb/random.hpp"
#include "hmb/shading.hpp"

namespace hmb {

void OracleParams::validate() const {
    if (rpp < 1) {
        throw std::invalid_argument("rays per pixel must be >= 1");
    }
    if (fixed_tau && !(*fixed_tau >= 0.0 && *fixed_tau <= 1.0)) {
        throw std::invalid_argument("fixed exposure time must lie in [0, 1]");
    }
}

Image render_ground_truth(const Scene& scene, const OracleParams& params) {
    params.validate();
    const Camera& cam = scene.camera;
    Image out(cam.width, cam.height, scene.background);
    if (scene.triangle_count() == 0) {
        return out;
    }
    const MotionBvh accel(scene);
    parallel_rows(cam.height, [&](int y) {
        for (int x = 0; x < cam.width; ++x) {
            const Ray ray = cam.pixel_ray(x, y);
            // Accumulate offsets from the first sample so a time-invariant pixel is exact.
            Rgb first;
            Rgb offset_sum;
            for (int s = 0; s < params.rpp; ++s) {
                const double tau =
                    params.fixed_tau
                        ? *params.fixed_tau
                        : (s + keyed_uniform(x, y, s, params.seed)) / params.rpp;
                const auto hit = accel.intersect(ray, 0.0, kInfinity, tau);
                const Rgb c = hit ? shade(*hit, scene) : scene.background;
                if (s == 0) {
                    first = c;
                } else {
                    offset_sum += c - first;
                }
            }
            out.at(x, y) = clamp01(first + offset_sum / params.rpp);
        }
    });
    return out;
}

}  // namespace hmb
