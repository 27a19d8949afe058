#pragma once

#include <array>
#include <optional>
#include <vector>

#include "hmb/math.hpp"

namespace hmb {

using Triangle = std::array<Vec3, 3>;

struct Ray {
    Vec3 origin;
    Vec3 direction;  // unit length
};

/// Pinhole camera. Pixel (0,0) is the top-left, +y runs down the image.
struct Camera {
    Vec3 position{0.0, 0.0, 0.0};
    Vec3 look_at{0.0, 0.0, 1.0};
    Vec3 up{0.0, 1.0, 0.0};
    double vertical_fov = 60.0;  // degrees
    int width = 320;
    int height = 240;

    /// Focal length in pixel units.
    double focal_pixels() const;

    Vec3 forward() const;
    Vec3 right() const;
    Vec3 true_up() const;

    /// Ray through the continuous pixel coordinate (px, py); pixel centers sit at +0.5.
    Ray primary_ray(double px, double py) const;
    Ray pixel_ray(int x, int y) const {
        return primary_ray(x + 0.5, y + 0.5);
    }

    /// Camera-space depth along the view axis.
    double depth_of(const Vec3& world) const;

    /// Continuous pixel coordinate of a world point, or nullopt when it lies behind the camera.
    std::optional<Vec2> project(const Vec3& world) const;
};

enum class LightType { Directional, Point };

struct Light {
    LightType type = LightType::Directional;
    Vec3 direction{0.0, 0.0, -1.0};  // from the surface toward the light
    Vec3 position{0.0, 0.0, 0.0};
    double intensity = 1.0;
};

struct MeshInstance {
    std::vector<Triangle> triangles;
    Rgb albedo{0.8, 0.8, 0.8};
    int mesh_id = 0;
    Vec3 frame_displacement{0.0, 0.0, 0.0};  // meters per frame
};

struct Scene {
    std::vector<MeshInstance> meshes;
    std::vector<Light> lights;
    Camera camera;
    double frame_rate = 60.0;       // frames per second
    double exposure = 1.0 / 60.0;   // seconds
    double ambient = 0.0;
    Rgb background{0.0, 0.0, 0.0};

    /// Fraction of one frame interval that the shutter stays open.
    double exposure_scale() const { return exposure * frame_rate; }

    /// World-space displacement of a mesh over the whole exposure.
    Vec3 exposure_displacement(const MeshInstance& mesh) const {
        return mesh.frame_displacement * exposure_scale();
    }

    /// Position at normalized exposure time tau in [0,1] of a vertex stored at tau = 1.
    Vec3 vertex_at(const MeshInstance& mesh, const Vec3& current, double tau) const;

    std::size_t triangle_count() const;
    const MeshInstance* find_mesh(int mesh_id) const;

    /// Throws std::invalid_argument on duplicate or negative mesh IDs and non-positive timing.
    void validate() const;
};

// Geometry helpers used by scene files and procedural scenes.
std::vector<Triangle> make_quad(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);
std::vector<Triangle> make_box(const Vec3& lo, const Vec3& hi);

}  // namespace hmb
