#include "hmb/ray_reveal.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "hmb/parallel.hpp"
#include "hmb/shading.hpp"

namespace hmb {

void RevealParams::validate() const {
    if (max_recursion < 1) {
        throw std::invalid_argument("max recursion must be >= 1");
    }
    if (!(luminance_epsilon >= 0.0)) {
        throw std::invalid_argument("luminance epsilon must be non-negative");
    }
    if (!(advance_epsilon > 0.0)) {
        throw std::invalid_argument("advance epsilon must be positive");
    }
}

RevealBuffers::RevealBuffers(int width, int height)
    : color(width, height),
      depth(width, height, kInfinity),
      velocity(width, height),
      valid(width, height, 0) {}

RevealRecord RevealBuffers::record(int x, int y) const {
    return {color.at(x, y), depth.at(x, y), velocity.at(x, y), valid.at(x, y) != 0};
}

void RevealBuffers::set(int x, int y, const RevealRecord& rec) {
    color.at(x, y) = rec.color;
    depth.at(x, y) = rec.depth;
    velocity.at(x, y) = rec.velocity;
    valid.at(x, y) = rec.valid ? 1 : 0;
}

RevealTrace trace_reveal(const Scene& scene, const Bvh& bvh, int x, int y,
                         const RevealParams& params) {
    const Camera& cam = scene.camera;
    const Ray primary = cam.pixel_ray(x, y);
    RevealTrace out;

    auto hit = bvh.intersect(primary, 0.0, kInfinity);
    out.rays_cast = 1;
    if (!hit) {
        return out;
    }
    const double first_luminance = luminance(shade(*hit, scene));

    for (int level = 0; level < params.max_recursion; ++level) {
        const Ray next{hit->point + primary.direction * params.advance_epsilon, primary.direction};
        hit = bvh.intersect(next, 0.0, kInfinity);
        ++out.rays_cast;
        if (!hit) {
            out.record = {scene.background, kInfinity, Vec2{}, true};
            return out;
        }
        const Rgb color = shade(*hit, scene);
        if (std::abs(luminance(color) - first_luminance) > params.luminance_epsilon) {
            const MeshInstance* mesh = scene.find_mesh(hit->mesh_id);
            out.record = {color, cam.depth_of(hit->point), surface_velocity(scene, *mesh, hit->point),
                          true};
            return out;
        }
    }
    return out;
}

RevealBuffers reveal_pass(const Scene& scene, const Bvh& bvh, const FrameBuffers& buffers,
                          const Mask& mask, const RevealParams& params) {
    if (!mask.same_shape(buffers.width(), buffers.height())) {
        throw std::invalid_argument("ray mask resolution does not match the G-buffer");
    }
    RevealBuffers out(buffers.width(), buffers.height());
    std::atomic<int> chains{0};
    std::atomic<long> rays{0};
    parallel_rows(buffers.height(), [&](int y) {
        int row_chains = 0;
        long row_rays = 0;
        for (int x = 0; x < buffers.width(); ++x) {
            if (mask.at(x, y) == 0 || buffers.mesh_id.at(x, y) == kMissId) {
                continue;
            }
            const RevealTrace trace = trace_reveal(scene, bvh, x, y, params);
            out.set(x, y, trace.record);
            ++row_chains;
            row_rays += trace.rays_cast;
        }
        chains += row_chains;
        rays += row_rays;
    });
    out.chains_traced = chains.load();
    out.rays_cast = rays.load();
    return out;
}

}  // namespace hmb
