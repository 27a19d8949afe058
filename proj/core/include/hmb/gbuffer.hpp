#pragma once

#include "hmb/bvh.hpp"
#include "hmb/scene.hpp"

namespace hmb {

inline constexpr int kMissId = -1;

struct PixelRecord {
    Rgb color;
    double depth = kInfinity;  // camera-space meters, +inf on a miss
    Vec2 velocity;             // pixels per exposure
    Vec3 normal;
    int mesh_id = kMissId;

    bool is_miss() const { return mesh_id == kMissId; }
};

/// Deferred-shading planes, all at the camera resolution.
struct FrameBuffers {
    Image color;
    Plane<double> depth;
    Plane<Vec2> velocity;
    Plane<Vec3> normal;
    Plane<int> mesh_id;

    FrameBuffers() = default;
    FrameBuffers(int width, int height, const Rgb& background);

    int width() const { return color.width(); }
    int height() const { return color.height(); }

    PixelRecord record(int x, int y) const;
    void set(int x, int y, const PixelRecord& rec);
};

struct MotionVector {
    Vec2 pixels;                 // curr - prev, pixels per frame
    bool behind_camera = false;  // either endpoint failed to project; pixels is zero
};

MotionVector screen_motion_vector(const Vec3& world_prev, const Vec3& world_curr,
                                  const Camera& camera);

/// Scales inter-frame motion to displacement over the open shutter.
constexpr Vec2 per_exposure_velocity(Vec2 motion_px_per_frame, double frame_rate, double exposure) {
    return motion_px_per_frame * (frame_rate * exposure);
}

/// Screen velocity (pixels per exposure) of a point at tau = 1 on the given mesh.
Vec2 surface_velocity(const Scene& scene, const MeshInstance& mesh, const Vec3& point);

/// One pixel-center primary ray per pixel at tau = 1.
FrameBuffers render_gbuffer(const Scene& scene, const Bvh& bvh);
FrameBuffers render_gbuffer(const Scene& scene);

}  // namespace hmb
