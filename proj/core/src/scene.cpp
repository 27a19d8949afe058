#include "hmb/scene.hpp"

#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

namespace hmb {

double Camera::focal_pixels() const {
    const double half_fov = 0.5 * vertical_fov * std::numbers::pi / 180.0;
    return 0.5 * static_cast<double>(height) / std::tan(half_fov);
}

Vec3 Camera::forward() const { return normalize(look_at - position); }

Vec3 Camera::right() const { return normalize(cross(forward(), up)); }

Vec3 Camera::true_up() const { return cross(right(), forward()); }

Ray Camera::primary_ray(double px, double py) const {
    const Vec3 f = forward();
    const Vec3 r = right();
    const Vec3 u = true_up();
    const double sx = px - 0.5 * width;
    const double sy = 0.5 * height - py;
    return {position, normalize(f * focal_pixels() + r * sx + u * sy)};
}

double Camera::depth_of(const Vec3& world) const { return dot(world - position, forward()); }

std::optional<Vec2> Camera::project(const Vec3& world) const {
    const Vec3 rel = world - position;
    const double z = dot(rel, forward());
    if (!(z > 0.0)) {
        return std::nullopt;
    }
    const double f = focal_pixels();
    const double sx = f * dot(rel, right()) / z;
    const double sy = f * dot(rel, true_up()) / z;
    return Vec2{0.5 * width + sx, 0.5 * height - sy};
}

Vec3 Scene::vertex_at(const MeshInstance& mesh, const Vec3& current, double tau) const {
    if (tau == 1.0) {
        return current;
    }
    return current - exposure_displacement(mesh) * (1.0 - tau);
}

std::size_t Scene::triangle_count() const {
    std::size_t n = 0;
    for (const auto& m : meshes) {
        n += m.triangles.size();
    }
    return n;
}

const MeshInstance* Scene::find_mesh(int mesh_id) const {
    for (const auto& m : meshes) {
        if (m.mesh_id == mesh_id) {
            return &m;
        }
    }
    return nullptr;
}

void Scene::validate() const {
    if (!(frame_rate > 0.0)) {
        throw std::invalid_argument("frame_rate must be positive");
    }
    if (!(exposure > 0.0)) {
        throw std::invalid_argument("exposure must be positive");
    }
    if (camera.width <= 0 || camera.height <= 0) {
        throw std::invalid_argument("camera resolution must be positive");
    }
    if (!(camera.vertical_fov > 0.0 && camera.vertical_fov < 180.0)) {
        throw std::invalid_argument("vertical fov must lie in (0, 180) degrees");
    }
    std::set<int> ids;
    for (const auto& m : meshes) {
        if (m.mesh_id < 0) {
            throw std::invalid_argument("mesh id must be non-negative: " + std::to_string(m.mesh_id));
        }
        if (!ids.insert(m.mesh_id).second) {
            throw std::invalid_argument("duplicate mesh id: " + std::to_string(m.mesh_id));
        }
    }
}

std::vector<Triangle> make_quad(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    return {Triangle{a, b, c}, Triangle{a, c, d}};
}

std::vector<Triangle> make_box(const Vec3& lo, const Vec3& hi) {
    const Vec3 p[8] = {
        {lo.x, lo.y, lo.z}, {hi.x, lo.y, lo.z}, {hi.x, hi.y, lo.z}, {lo.x, hi.y, lo.z},
        {lo.x, lo.y, hi.z}, {hi.x, lo.y, hi.z}, {hi.x, hi.y, hi.z}, {lo.x, hi.y, hi.z},
    };
    std::vector<Triangle> tris;
    auto face = [&](int a, int b, int c, int d) {
        auto q = make_quad(p[a], p[b], p[c], p[d]);
        tris.insert(tris.end(), q.begin(), q.end());
    };
    face(0, 3, 2, 1);  // -z
    face(4, 5, 6, 7);  // +z
    face(0, 4, 7, 3);  // -x
    face(1, 2, 6, 5);  // +x
    face(0, 1, 5, 4);  // -y
    face(3, 7, 6, 2);  // +y
    return tris;
}

}  // namespace hmb
