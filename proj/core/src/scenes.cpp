#include "hmb/scenes.hpp"

#include <random>

namespace hmb::scenes {

namespace {

std::vector<Triangle> quad_xy(double x0, double x1, double y0, double y1, double z) {
    return make_quad({x0, y0, z}, {x1, y0, z}, {x1, y1, z}, {x0, y1, z});
}

Camera default_camera(int width, int height) {
    Camera cam;
    cam.position = {0.0, 0.0, 0.0};
    cam.look_at = {0.0, 0.0, -1.0};
    cam.up = {0.0, 1.0, 0.0};
    cam.vertical_fov = 60.0;
    cam.width = width;
    cam.height = height;
    return cam;
}

Scene base_scene(int width, int height) {
    Scene s;
    s.camera = default_camera(width, height);
    s.frame_rate = 120.0;
    s.exposure = 1.0 / 60.0;
    s.ambient = 0.1;
    s.background = {0.05, 0.05, 0.08};
    Light key;
    key.type = LightType::Directional;
    key.direction = {0.0, 0.0, 1.0};
    key.intensity = 0.9;
    s.lights.push_back(key);
    return s;
}

// Frame displacement giving `pixels` of screen motion per exposure at `depth`.
double per_frame_shift(const Scene& s, double pixels, double depth) {
    return pixels_to_world(s.camera, pixels, depth) / s.exposure_scale();
}

}  // namespace

double pixels_to_world(const Camera& camera, double pixels, double depth) {
    return pixels * depth / camera.focal_pixels();
}

SceneFile two_quads() {
    Scene s = base_scene(320, 240);
    MeshInstance back;
    back.mesh_id = 0;
    back.albedo = {0.8, 0.8, 0.8};
    back.triangles = quad_xy(-5.0, 5.0, -5.0, 5.0, -3.0);
    s.meshes.push_back(back);

    MeshInstance front;
    front.mesh_id = 1;
    front.albedo = {0.9, 0.1, 0.1};
    front.triangles = quad_xy(-0.6, 0.6, -0.45, 0.45, -2.0);
    front.frame_displacement = {per_frame_shift(s, 30.0, 2.0), 0.0, 0.0};
    s.meshes.push_back(front);
    return {s, 0.03, 0.9};
}

SceneFile occluder_pattern() {
    Scene s = base_scene(320, 240);
    constexpr double kDepth = 3.0;
    constexpr double kCell = 0.16;
    const Rgb sofa{0.9, 0.88, 0.82};
    const Rgb cushion{0.85, 0.3, 0.5};

    // Two meshes so the checker shares one ID per color; both static.
    MeshInstance light_cells;
    light_cells.mesh_id = 0;
    light_cells.albedo = sofa;
    MeshInstance dark_cells;
    dark_cells.mesh_id = 1;
    dark_cells.albedo = cushion;
    for (int j = -16; j < 16; ++j) {
        for (int i = -20; i < 20; ++i) {
            auto q = quad_xy(i * kCell, (i + 1) * kCell, j * kCell, (j + 1) * kCell, -kDepth);
            auto& target = ((i + j) % 2 == 0) ? light_cells : dark_cells;
            target.triangles.insert(target.triangles.end(), q.begin(), q.end());
        }
    }
    s.meshes.push_back(light_cells);
    s.meshes.push_back(dark_cells);

    MeshInstance vase;
    vase.mesh_id = 2;
    vase.albedo = {0.75, 0.08, 0.06};
    vase.triangles = quad_xy(-0.35, 0.25, -0.5, 0.45, -1.5);
    vase.frame_displacement = {per_frame_shift(s, 28.0, 1.5), 0.0, 0.0};
    s.meshes.push_back(vase);
    return {s, 0.03, 0.9};
}

SceneFile moving_quad(int width, int height) {
    Scene s = base_scene(width, height);
    MeshInstance back;
    back.mesh_id = 0;
    back.albedo = {0.1, 0.2, 0.9};
    back.triangles = quad_xy(-5.0, 5.0, -5.0, 5.0, -3.0);
    s.meshes.push_back(back);

    MeshInstance front;
    front.mesh_id = 1;
    front.albedo = {0.95, 0.9, 0.1};
    front.triangles = quad_xy(-0.4, 0.4, -0.3, 0.3, -2.0);
    front.frame_displacement = {per_frame_shift(s, 12.0, 2.0), 0.0, 0.0};
    s.meshes.push_back(front);
    return {s, 0.03, 0.9};
}

SceneFile static_boxes() {
    Scene s = base_scene(320, 240);
    Light fill;
    fill.type = LightType::Point;
    fill.position = {2.0, 3.0, 1.0};
    fill.intensity = 0.4;
    s.lights.push_back(fill);

    MeshInstance wall;
    wall.mesh_id = 0;
    wall.albedo = {0.7, 0.7, 0.65};
    wall.triangles = quad_xy(-6.0, 6.0, -6.0, 6.0, -6.0);
    s.meshes.push_back(wall);

    MeshInstance near_box;
    near_box.mesh_id = 1;
    near_box.albedo = {0.2, 0.6, 0.3};
    near_box.triangles = make_box({-1.2, -0.6, -3.2}, {-0.2, 0.4, -2.4});
    s.meshes.push_back(near_box);

    MeshInstance far_box;
    far_box.mesh_id = 2;
    far_box.albedo = {0.8, 0.3, 0.2};
    far_box.triangles = make_box({0.4, -0.9, -4.5}, {1.6, 0.8, -3.5});
    s.meshes.push_back(far_box);
    return {s, 0.03, 0.9};
}

SceneFile random_quads(std::uint64_t seed, int width, int height) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

    Scene s = base_scene(width, height);
    MeshInstance back;
    back.mesh_id = 0;
    back.albedo = {uniform(0.1, 0.9), uniform(0.1, 0.9), uniform(0.1, 0.9)};
    back.triangles = quad_xy(-20.0, 20.0, -20.0, 20.0, -8.0);
    back.frame_displacement = {per_frame_shift(s, uniform(-3.0, 3.0), 8.0), 0.0, 0.0};
    s.meshes.push_back(back);

    const int count = 2 + static_cast<int>(unit(rng) * 4.0);
    for (int k = 0; k < count; ++k) {
        const double depth = uniform(1.5, 6.0);
        const double half_w = uniform(0.1, 0.6) * depth / 3.0;
        const double half_h = uniform(0.1, 0.6) * depth / 3.0;
        const double cx = uniform(-0.5, 0.5) * depth;
        const double cy = uniform(-0.35, 0.35) * depth;
        MeshInstance quad;
        quad.mesh_id = k + 1;
        quad.albedo = {uniform(0.0, 1.0), uniform(0.0, 1.0), uniform(0.0, 1.0)};
        quad.triangles = quad_xy(cx - half_w, cx + half_w, cy - half_h, cy + half_h, -depth);
        // Up to 60 px per exposure so the tile clamp is exercised.
        const double speed = uniform(0.0, 60.0);
        const double angle = uniform(0.0, 6.283185307179586);
        const double shift = per_frame_shift(s, speed, depth);
        quad.frame_displacement = {shift * std::cos(angle), shift * std::sin(angle), 0.0};
        s.meshes.push_back(quad);
    }
    return {s, 0.03, 0.9};
}

}  // namespace hmb::scenes
