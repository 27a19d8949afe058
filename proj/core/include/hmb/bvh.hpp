#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hmb/scene.hpp"

namespace hmb {

struct HitRecord {
    double t = 0.0;
    Vec3 point;
    Vec3 normal;  // unit, facing against the incoming ray
    int mesh_id = -1;
    Rgb albedo;
    std::uint32_t primitive = 0;  // global triangle index, mesh-major
};

struct Aabb {
    Vec3 lo{kInfinity, kInfinity, kInfinity};
    Vec3 hi{-kInfinity, -kInfinity, -kInfinity};

    void expand(const Vec3& p) {
        lo = component_min(lo, p);
        hi = component_max(hi, p);
    }
    void expand(const Aabb& b) {
        lo = component_min(lo, b.lo);
        hi = component_max(hi, b.hi);
    }
    bool contains(const Aabb& b) const {
        return lo.x <= b.lo.x && lo.y <= b.lo.y && lo.z <= b.lo.z && hi.x >= b.hi.x &&
               hi.y >= b.hi.y && hi.z >= b.hi.z;
    }
    int longest_axis() const;
    /// Slab test; returns the entry distance when the ray overlaps [t_min, t_max].
    std::optional<double> hit(const Ray& ray, const Vec3& inv_dir, double t_min, double t_max) const;
};

struct BvhPrimitive {
    Triangle vertices;
    int mesh_id = -1;
    Rgb albedo;
    std::uint32_t index = 0;
};

/// Moller-Trumbore test. Returns the ray parameter of the hit inside (t_min, t_max).
std::optional<double> intersect_triangle(const Ray& ray, const Triangle& tri, double t_min,
                                         double t_max);

/// Bounding-volume hierarchy over triangles frozen at one exposure time.
/// Nodes split at the centroid median along the longest axis.
class Bvh {
public:
    struct Node {
        Aabb bounds;
        std::uint32_t first = 0;  // first primitive (leaf) or left child (interior)
        std::uint32_t count = 0;  // primitive count; 0 marks an interior node
        std::uint32_t right = 0;
    };

    static constexpr std::uint32_t kLeafSize = 4;

    explicit Bvh(std::vector<BvhPrimitive> primitives);

    std::optional<HitRecord> intersect(const Ray& ray, double t_min, double t_max) const;

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<BvhPrimitive>& primitives() const { return primitives_; }
    const Aabb& bounds() const { return nodes_.front().bounds; }

private:
    std::uint32_t build(std::uint32_t begin, std::uint32_t end);

    std::vector<BvhPrimitive> primitives_;
    std::vector<Node> nodes_;
};

/// Hierarchy over all scene triangles at normalized exposure time tau (tau = 1 is the current
/// frame). Throws std::invalid_argument("empty scene") when the scene has no triangles.
Bvh build_bvh(const Scene& scene, double tau);

std::optional<HitRecord> intersect(const Bvh& bvh, const Ray& ray, double t_min, double t_max);

/// Reference nearest-hit search over every primitive.
std::optional<HitRecord> brute_force_intersect(std::span<const BvhPrimitive> primitives,
                                               const Ray& ray, double t_min, double t_max);

/// Per-mesh hierarchies built once at tau = 1. Rigid translation lets a query at any exposure
/// time shift the ray into each mesh's frame instead of rebuilding.
class MotionBvh {
public:
    explicit MotionBvh(const Scene& scene);

    std::optional<HitRecord> intersect(const Ray& ray, double t_min, double t_max,
                                       double tau) const;

private:
    struct Entry {
        Bvh bvh;
        Vec3 exposure_displacement;
    };
    std::vector<Entry> meshes_;
};

}  // namespace hmb
