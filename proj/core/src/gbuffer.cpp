#include "hmb/gbuffer.hpp"

#include "hmb/parallel.hpp"
#include "hmb/shading.hpp"

namespace hmb {

FrameBuffers::FrameBuffers(int width, int height, const Rgb& background)
    : color(width, height, background),
      depth(width, height, kInfinity),
      velocity(width, height, Vec2{}),
      normal(width, height, Vec3{}),
      mesh_id(width, height, kMissId) {}

PixelRecord FrameBuffers::record(int x, int y) const {
    return {color.at(x, y), depth.at(x, y), velocity.at(x, y), normal.at(x, y), mesh_id.at(x, y)};
}

void FrameBuffers::set(int x, int y, const PixelRecord& rec) {
    color.at(x, y) = rec.color;
    depth.at(x, y) = rec.depth;
    velocity.at(x, y) = rec.velocity;
    normal.at(x, y) = rec.normal;
    mesh_id.at(x, y) = rec.mesh_id;
}

MotionVector screen_motion_vector(const Vec3& world_prev, const Vec3& world_curr,
                                  const Camera& camera) {
    const auto prev = camera.project(world_prev);
    const auto curr = camera.project(world_curr);
    if (!prev || !curr) {
        return {Vec2{}, true};
    }
    return {*curr - *prev, false};
}

Vec2 surface_velocity(const Scene& scene, const MeshInstance& mesh, const Vec3& point) {
    const MotionVector mv =
        screen_motion_vector(point - mesh.frame_displacement, point, scene.camera);
    return per_exposure_velocity(mv.pixels, scene.frame_rate, scene.exposure);
}

FrameBuffers render_gbuffer(const Scene& scene, const Bvh& bvh) {
    const Camera& cam = scene.camera;
    FrameBuffers out(cam.width, cam.height, scene.background);
    parallel_rows(cam.height, [&](int y) {
        for (int x = 0; x < cam.width; ++x) {
            const Ray ray = cam.pixel_ray(x, y);
            const auto hit = bvh.intersect(ray, 0.0, kInfinity);
            if (!hit) {
                continue;
            }
            const MeshInstance* mesh = scene.find_mesh(hit->mesh_id);
            PixelRecord rec;
            rec.color = shade(*hit, scene);
            rec.depth = cam.depth_of(hit->point);
            rec.velocity = surface_velocity(scene, *mesh, hit->point);
            rec.normal = hit->normal;
            rec.mesh_id = hit->mesh_id;
            out.set(x, y, rec);
        }
    });
    return out;
}

FrameBuffers render_gbuffer(const Scene& scene) {
    if (scene.triangle_count() == 0) {
        return FrameBuffers(scene.camera.width, scene.camera.height, scene.background);
    }
    return render_gbuffer(scene, build_bvh(scene, 1.0));
}

}  // namespace hmb
