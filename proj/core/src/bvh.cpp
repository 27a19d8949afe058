#include "hmb/bvh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hmb {

namespace {

Vec3 inverse_direction(const Vec3& d) { return {1.0 / d.x, 1.0 / d.y, 1.0 / d.z}; }

Aabb triangle_bounds(const Triangle& tri) {
    Aabb b;
    for (const auto& v : tri) {
        b.expand(v);
    }
    return b;
}

Vec3 centroid(const Triangle& tri) { return (tri[0] + tri[1] + tri[2]) / 3.0; }

// Nearest hit wins; equal distances resolve to the lower primitive index so that traversal
// order never changes the result.
bool closer(double t, std::uint32_t index, const std::optional<HitRecord>& best) {
    return !best || t < best->t || (t == best->t && index < best->primitive);
}

HitRecord make_hit(const Ray& ray, const BvhPrimitive& prim, double t) {
    const Triangle& tri = prim.vertices;
    Vec3 n = normalize(cross(tri[1] - tri[0], tri[2] - tri[0]));
    if (dot(n, ray.direction) > 0.0) {
        n = -n;
    }
    HitRecord hit;
    hit.t = t;
    hit.point = ray.origin + ray.direction * t;
    hit.normal = n;
    hit.mesh_id = prim.mesh_id;
    hit.albedo = prim.albedo;
    hit.primitive = prim.index;
    return hit;
}

}  // namespace

int Aabb::longest_axis() const {
    const Vec3 e = hi - lo;
    if (e.x >= e.y && e.x >= e.z) {
        return 0;
    }
    return e.y >= e.z ? 1 : 2;
}

std::optional<double> Aabb::hit(const Ray& ray, const Vec3& inv_dir, double t_min,
                                double t_max) const {
    double t0 = t_min;
    double t1 = t_max;
    for (int axis = 0; axis < 3; ++axis) {
        const double o = ray.origin[axis];
        const double inv = inv_dir[axis];
        double near = (lo[axis] - o) * inv;
        double far = (hi[axis] - o) * inv;
        if (std::isnan(near) || std::isnan(far)) {
            // Zero direction component with the origin on a slab plane.
            if (o < lo[axis] || o > hi[axis]) {
                return std::nullopt;
            }
            continue;
        }
        if (near > far) {
            std::swap(near, far);
        }
        t0 = std::max(t0, near);
        t1 = std::min(t1, far);
        if (t0 > t1) {
            return std::nullopt;
        }
    }
    return t0;
}

std::optional<double> intersect_triangle(const Ray& ray, const Triangle& tri, double t_min,
                                         double t_max) {
    constexpr double kDetEpsilon = 1e-14;
    const Vec3 e1 = tri[1] - tri[0];
    const Vec3 e2 = tri[2] - tri[0];
    const Vec3 p = cross(ray.direction, e2);
    const double det = dot(e1, p);
    if (std::abs(det) < kDetEpsilon) {
        return std::nullopt;
    }
    const double inv_det = 1.0 / det;
    const Vec3 s = ray.origin - tri[0];
    const double u = dot(s, p) * inv_det;
    if (u < 0.0 || u > 1.0) {
        return std::nullopt;
    }
    const Vec3 q = cross(s, e1);
    const double v = dot(ray.direction, q) * inv_det;
    if (v < 0.0 || u + v > 1.0) {
        return std::nullopt;
    }
    const double t = dot(e2, q) * inv_det;
    if (!(t > t_min && t < t_max)) {
        return std::nullopt;
    }
    return t;
}

Bvh::Bvh(std::vector<BvhPrimitive> primitives) : primitives_(std::move(primitives)) {
    if (primitives_.empty()) {
        throw std::invalid_argument("empty scene");
    }
    nodes_.reserve(2 * primitives_.size());
    build(0, static_cast<std::uint32_t>(primitives_.size()));
}

std::uint32_t Bvh::build(std::uint32_t begin, std::uint32_t end) {
    const auto node_index = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();

    Aabb bounds;
    Aabb centroids;
    for (std::uint32_t i = begin; i < end; ++i) {
        bounds.expand(triangle_bounds(primitives_[i].vertices));
        centroids.expand(centroid(primitives_[i].vertices));
    }
    nodes_[node_index].bounds = bounds;

    const std::uint32_t count = end - begin;
    if (count <= kLeafSize) {
        nodes_[node_index].first = begin;
        nodes_[node_index].count = count;
        return node_index;
    }

    const int axis = centroids.longest_axis();
    const std::uint32_t mid = begin + count / 2;
    std::nth_element(primitives_.begin() + begin, primitives_.begin() + mid,
                     primitives_.begin() + end, [axis](const BvhPrimitive& a, const BvhPrimitive& b) {
                         const double ca = centroid(a.vertices)[axis];
                         const double cb = centroid(b.vertices)[axis];
                         return ca < cb || (ca == cb && a.index < b.index);
                     });

    const std::uint32_t left = build(begin, mid);
    const std::uint32_t right = build(mid, end);
    nodes_[node_index].first = left;
    nodes_[node_index].right = right;
    nodes_[node_index].count = 0;
    return node_index;
}

std::optional<HitRecord> Bvh::intersect(const Ray& ray, double t_min, double t_max) const {
    const Vec3 inv_dir = inverse_direction(ray.direction);
    std::optional<HitRecord> best;
    const BvhPrimitive* best_prim = nullptr;
    double best_t = t_max;

    std::uint32_t stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        // Inclusive upper bound so an equal-distance primitive can still win the index tie-break.
        const double limit = best ? std::nextafter(best_t, kInfinity) : t_max;
        if (!node.bounds.hit(ray, inv_dir, t_min, limit)) {
            continue;
        }
        if (node.count > 0) {
            for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
                const BvhPrimitive& prim = primitives_[i];
                const auto t = intersect_triangle(ray, prim.vertices, t_min, limit);
                if (t && closer(*t, prim.index, best)) {
                    best = HitRecord{};
                    best->t = *t;
                    best->primitive = prim.index;
                    best_prim = &prim;
                    best_t = *t;
                }
            }
            continue;
        }
        const Node& l = nodes_[node.first];
        const Node& r = nodes_[node.right];
        const auto tl = l.bounds.hit(ray, inv_dir, t_min, limit);
        const auto tr = r.bounds.hit(ray, inv_dir, t_min, limit);
        // Push the farther child first so the nearer one is visited next.
        if (tl && tr) {
            if (*tl <= *tr) {
                stack[top++] = node.right;
                stack[top++] = node.first;
            } else {
                stack[top++] = node.first;
                stack[top++] = node.right;
            }
        } else if (tl) {
            stack[top++] = node.first;
        } else if (tr) {
            stack[top++] = node.right;
        }
    }
    if (!best) {
        return std::nullopt;
    }
    return make_hit(ray, *best_prim, best->t);
}

Bvh build_bvh(const Scene& scene, double tau) {
    std::vector<BvhPrimitive> prims;
    prims.reserve(scene.triangle_count());
    std::uint32_t index = 0;
    for (const auto& mesh : scene.meshes) {
        for (const auto& tri : mesh.triangles) {
            BvhPrimitive p;
            for (int k = 0; k < 3; ++k) {
                p.vertices[k] = scene.vertex_at(mesh, tri[k], tau);
            }
            p.mesh_id = mesh.mesh_id;
            p.albedo = mesh.albedo;
            p.index = index++;
            prims.push_back(p);
        }
    }
    return Bvh(std::move(prims));
}

std::optional<HitRecord> intersect(const Bvh& bvh, const Ray& ray, double t_min, double t_max) {
    return bvh.intersect(ray, t_min, t_max);
}

std::optional<HitRecord> brute_force_intersect(std::span<const BvhPrimitive> primitives,
                                               const Ray& ray, double t_min, double t_max) {
    std::optional<HitRecord> best;
    const BvhPrimitive* best_prim = nullptr;
    for (const auto& prim : primitives) {
        const auto t = intersect_triangle(ray, prim.vertices, t_min, t_max);
        if (t && closer(*t, prim.index, best)) {
            best = HitRecord{};
            best->t = *t;
            best->primitive = prim.index;
            best_prim = &prim;
        }
    }
    if (!best) {
        return std::nullopt;
    }
    return make_hit(ray, *best_prim, best->t);
}

MotionBvh::MotionBvh(const Scene& scene) {
    std::uint32_t index = 0;
    for (const auto& mesh : scene.meshes) {
        std::vector<BvhPrimitive> prims;
        prims.reserve(mesh.triangles.size());
        for (const auto& tri : mesh.triangles) {
            prims.push_back({tri, mesh.mesh_id, mesh.albedo, index++});
        }
        if (prims.empty()) {
            continue;
        }
        meshes_.push_back({Bvh(std::move(prims)), scene.exposure_displacement(mesh)});
    }
    if (meshes_.empty()) {
        throw std::invalid_argument("empty scene");
    }
}

std::optional<HitRecord> MotionBvh::intersect(const Ray& ray, double t_min, double t_max,
                                              double tau) const {
    std::optional<HitRecord> best;
    for (const auto& entry : meshes_) {
        const Vec3 shift = entry.exposure_displacement * (1.0 - tau);
        const Ray local{ray.origin + shift, ray.direction};
        const double limit = best ? std::nextafter(best->t, kInfinity) : t_max;
        auto hit = entry.bvh.intersect(local, t_min, limit);
        if (hit && closer(hit->t, hit->primitive, best)) {
            hit->point = ray.origin + ray.direction * hit->t;
            best = hit;
        }
    }
    return best;
}

}  // namespace hmb
