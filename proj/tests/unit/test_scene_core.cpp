#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hmb/bvh.hpp"
#include "hmb/shading.hpp"
#include "test_support.hpp"

namespace hmb {
namespace {

using testing::forward_camera;
using testing::rect;

Triangle random_triangle(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> centre(-5.0, 5.0);
    std::uniform_real_distribution<double> offset(-0.6, 0.6);
    const Vec3 c{centre(rng), centre(rng), centre(rng)};
    Triangle t;
    for (auto& v : t) {
        v = c + Vec3{offset(rng), offset(rng), offset(rng)};
    }
    return t;
}

TEST(Camera, ProjectsPixelCentresBack) {
    const Camera cam = forward_camera(64, 48, 50.0);
    for (int y = 0; y < cam.height; y += 7) {
        for (int x = 0; x < cam.width; x += 5) {
            const Ray r = cam.pixel_ray(x, y);
            const auto p = cam.project(r.origin + r.direction * 3.7);
            ASSERT_TRUE(p.has_value());
            EXPECT_NEAR(p->x, x + 0.5, 1e-9);
            EXPECT_NEAR(p->y, y + 0.5, 1e-9);
        }
    }
}

TEST(Camera, FocalLengthAndOrientation) {
    const Camera cam = forward_camera(320, 240, 60.0);
    EXPECT_NEAR(cam.focal_pixels(), 120.0 / std::tan(M_PI / 6.0), 1e-9);
    EXPECT_NEAR(cam.depth_of({0.3, -0.2, -2.5}), 2.5, 1e-12);
    // +x world is right on screen, +y world is up (smaller pixel y).
    const auto right = cam.project({0.5, 0.0, -2.0});
    const auto up = cam.project({0.0, 0.5, -2.0});
    ASSERT_TRUE(right && up);
    EXPECT_GT(right->x, 160.0);
    EXPECT_LT(up->y, 120.0);
    EXPECT_FALSE(cam.project({0.0, 0.0, 1.0}).has_value());
}

TEST(Scene, VertexTimeConvention) {
    Scene s;
    s.frame_rate = 120.0;
    s.exposure = 1.0 / 60.0;  // shutter open for two frame intervals
    MeshInstance m = rect(0, -1, 1, -1, 1, -2);
    m.frame_displacement = {0.1, 0.0, 0.0};
    const Vec3 p{0.5, 0.25, -2.0};
    EXPECT_EQ(s.vertex_at(m, p, 1.0), p);
    const Vec3 start = s.vertex_at(m, p, 0.0);
    EXPECT_NEAR(start.x, 0.5 - 0.2, 1e-12);
    EXPECT_NEAR(s.vertex_at(m, p, 0.5).x, 0.5 - 0.1, 1e-12);
    EXPECT_DOUBLE_EQ(start.y, 0.25);
}

TEST(Scene, ValidateRejectsBadInput) {
    Scene s;
    s.meshes.push_back(rect(3, -1, 1, -1, 1, -2));
    s.meshes.push_back(rect(3, -1, 1, -1, 1, -3));
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s.meshes[1].mesh_id = -2;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s.meshes[1].mesh_id = 4;
    EXPECT_NO_THROW(s.validate());
    s.exposure = 0.0;
    EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(Bvh, EmptySceneIsAnError) {
    Scene s;
    try {
        build_bvh(s, 1.0);
        FAIL() << "expected an exception";
    } catch (const std::invalid_argument& e) {
        EXPECT_STREQ(e.what(), "empty scene");
    }
    EXPECT_THROW(MotionBvh{s}, std::invalid_argument);
}

TEST(Bvh, SingleTriangleRootBounds) {
    Scene s;
    MeshInstance m;
    m.triangles.push_back({Vec3{0, 0, -1}, Vec3{2, 1, -3}, Vec3{-1, 4, -2}});
    s.meshes.push_back(m);
    const Bvh bvh = build_bvh(s, 1.0);
    EXPECT_EQ(bvh.bounds().lo, (Vec3{-1, 0, -3}));
    EXPECT_EQ(bvh.bounds().hi, (Vec3{2, 4, -1}));
}

TEST(Bvh, StaticSceneIgnoresTau) {
    Scene s;
    s.meshes.push_back(rect(0, -1, 1, -1, 1, -2));
    s.meshes.push_back(rect(1, -3, 3, -3, 3, -4));
    const Bvh a = build_bvh(s, 1.0);
    const Bvh b = build_bvh(s, 0.3);
    ASSERT_EQ(a.nodes().size(), b.nodes().size());
    for (std::size_t i = 0; i < a.nodes().size(); ++i) {
        EXPECT_EQ(a.nodes()[i].bounds.lo, b.nodes()[i].bounds.lo);
        EXPECT_EQ(a.nodes()[i].bounds.hi, b.nodes()[i].bounds.hi);
    }
}

TEST(Bvh, StructureInvariants) {
    std::mt19937_64 rng(11);
    std::vector<BvhPrimitive> prims;
    for (std::uint32_t i = 0; i < 257; ++i) {
        prims.push_back({random_triangle(rng), 0, {}, i});
    }
    const Bvh bvh(prims);
    std::size_t leaf_prims = 0;
    for (const auto& node : bvh.nodes()) {
        if (node.count > 0) {
            EXPECT_LE(node.count, Bvh::kLeafSize);
            leaf_prims += node.count;
            for (std::uint32_t k = node.first; k < node.first + node.count; ++k) {
                Aabb box;
                for (const auto& v : bvh.primitives()[k].vertices) box.expand(v);
                EXPECT_TRUE(node.bounds.contains(box));
            }
        } else {
            EXPECT_TRUE(node.bounds.contains(bvh.nodes()[node.first].bounds));
            EXPECT_TRUE(node.bounds.contains(bvh.nodes()[node.right].bounds));
        }
    }
    EXPECT_EQ(leaf_prims, prims.size());
}

TEST(Bvh, MatchesBruteForceOnRandomTriangles) {
    std::mt19937_64 rng(2024);
    std::vector<BvhPrimitive> prims;
    for (std::uint32_t i = 0; i < 1000; ++i) {
        prims.push_back({random_triangle(rng), static_cast<int>(i % 7), {}, i});
    }
    const Bvh bvh(prims);
    std::uniform_real_distribution<double> outside(-12.0, 12.0);
    std::uniform_real_distribution<double> inside(-4.0, 4.0);
    int hits = 0;
    for (int r = 0; r < 100; ++r) {
        const Vec3 origin{outside(rng), outside(rng), 12.0};
        const Vec3 target{inside(rng), inside(rng), inside(rng)};
        const Ray ray{origin, normalize(target - origin)};
        const auto fast = bvh.intersect(ray, 0.0, kInfinity);
        const auto slow = brute_force_intersect(prims, ray, 0.0, kInfinity);
        ASSERT_EQ(fast.has_value(), slow.has_value()) << "ray " << r;
        if (fast) {
            ++hits;
            EXPECT_EQ(fast->t, slow->t);
            EXPECT_EQ(fast->primitive, slow->primitive);
            EXPECT_EQ(fast->mesh_id, slow->mesh_id);
        }
    }
    EXPECT_GT(hits, 50);
}

TEST(Bvh, EqualDistanceTieGoesToLowerIndex) {
    // Two coincident quads; the lower-index triangles must win regardless of tree layout.
    Scene s;
    s.meshes.push_back(rect(5, -1, 1, -1, 1, -2));
    s.meshes.push_back(rect(2, -1, 1, -1, 1, -2));
    const Bvh bvh = build_bvh(s, 1.0);
    const auto hit = bvh.intersect({{0.1, 0.2, 0.0}, {0, 0, -1}}, 0.0, kInfinity);
    ASSERT_TRUE(hit);
    EXPECT_EQ(hit->mesh_id, 5);
}

TEST(Bvh, QuadAtDistanceFive) {
    Scene s;
    s.meshes.push_back(rect(0, -0.5, 0.5, -0.5, 0.5, -5.0));
    const Bvh bvh = build_bvh(s, 1.0);
    const auto hit = intersect(bvh, {{0, 0, 0}, {0, 0, -1}}, 0.0, kInfinity);
    ASSERT_TRUE(hit);
    EXPECT_NEAR(hit->t, 5.0, 1e-6);
    EXPECT_NEAR(hit->normal.z, 1.0, 1e-12);
    EXPECT_FALSE(intersect(bvh, {{0, 0, 0}, {0, 0, 1}}, 0.0, kInfinity));
    EXPECT_FALSE(intersect(bvh, {{3, 0, 0}, {0, 0, -1}}, 0.0, kInfinity));
    EXPECT_FALSE(intersect(bvh, {{0, 0, 0}, {0, 0, -1}}, 0.0, 4.9));
}

TEST(Bvh, NormalFacesTheRay) {
    Scene s;
    s.meshes.push_back(rect(0, -1, 1, -1, 1, -2));
    const Bvh bvh = build_bvh(s, 1.0);
    const auto back = intersect(bvh, {{0, 0, -4}, {0, 0, 1}}, 0.0, kInfinity);
    ASSERT_TRUE(back);
    EXPECT_NEAR(back->normal.z, -1.0, 1e-12);
}

TEST(MotionBvh, MatchesRebuiltHierarchyAtEveryTau) {
    Scene s;
    s.frame_rate = 60.0;
    s.exposure = 1.0 / 60.0;
    MeshInstance a = rect(0, -0.5, 0.5, -0.5, 0.5, -2.0);
    a.frame_displacement = {0.6, 0.1, 0.0};
    MeshInstance b = rect(1, -3, 3, -3, 3, -3.0);
    s.meshes = {a, b};
    const MotionBvh motion(s);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dir(-0.4, 0.4);
    for (double tau : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        const Bvh frozen = build_bvh(s, tau);
        for (int i = 0; i < 200; ++i) {
            const Ray ray{{0, 0, 0}, normalize(Vec3{dir(rng), dir(rng), -1.0})};
            const auto h1 = motion.intersect(ray, 0.0, kInfinity, tau);
            const auto h2 = frozen.intersect(ray, 0.0, kInfinity);
            ASSERT_EQ(h1.has_value(), h2.has_value());
            if (h1) {
                EXPECT_EQ(h1->mesh_id, h2->mesh_id);
                EXPECT_NEAR(h1->t, h2->t, 1e-9);
                EXPECT_NEAR(h1->point.x, h2->point.x, 1e-9);
            }
        }
    }
}

TEST(Shading, LightBehindSurfaceLeavesAmbient) {
    HitRecord hit;
    hit.normal = {0, 0, 1};
    hit.albedo = {0.5, 0.4, 0.3};
    Light l = testing::head_light(1.0);
    l.direction = {0, 0, -1};
    const Rgb c = shade(hit, std::span<const Light>(&l, 1), 0.2);
    EXPECT_NEAR(c.r, 0.1, 1e-12);
    EXPECT_NEAR(c.g, 0.08, 1e-12);
    EXPECT_NEAR(c.b, 0.06, 1e-12);
}

TEST(Shading, NormalIncidence) {
    HitRecord hit;
    hit.normal = {0, 0, 1};
    hit.albedo = {1, 0, 0};
    const Light l = testing::head_light(1.0);
    EXPECT_EQ(shade(hit, std::span<const Light>(&l, 1), 0.0), (Rgb{1, 0, 0}));
}

TEST(Shading, FortyFiveDegrees) {
    HitRecord hit;
    hit.normal = {0, 0, 1};
    hit.albedo = {0.8, 0.8, 0.8};
    Light l = testing::head_light(1.0);
    l.direction = {1, 0, 1};
    const Rgb c = shade(hit, std::span<const Light>(&l, 1), 0.0);
    EXPECT_NEAR(c.r, 0.566, 1e-3);
    EXPECT_NEAR(c.g, 0.8 * std::sqrt(0.5), 1e-12);
}

TEST(Shading, PointLightHasNoFalloff) {
    HitRecord hit;
    hit.point = {0, 0, -2};
    hit.normal = {0, 0, 1};
    hit.albedo = {0.5, 0.5, 0.5};
    Light near_light;
    near_light.type = LightType::Point;
    near_light.position = {0, 0, -1};
    Light far_light = near_light;
    far_light.position = {0, 0, 50};
    EXPECT_EQ(shade(hit, std::span<const Light>(&near_light, 1), 0.0),
              shade(hit, std::span<const Light>(&far_light, 1), 0.0));
}

TEST(Shading, ClampsToUnitRange) {
    HitRecord hit;
    hit.normal = {0, 0, 1};
    hit.albedo = {1, 1, 1};
    const Light l = testing::head_light(3.0);
    EXPECT_EQ(shade(hit, std::span<const Light>(&l, 1), 0.5), (Rgb{1, 1, 1}));
}

TEST(Luminance, Examples) {
    static_assert(luminance({0, 0, 0}) == 0.0);
    EXPECT_NEAR(luminance({1, 1, 1}), 1.0, 1e-12);
    EXPECT_NEAR(luminance({0.5, 0.25, 0.75}), 0.33925, 1e-12);  // 0.1063 + 0.1788 + 0.05415
}

TEST(Geometry, BoxHasTwelveOutwardTriangles) {
    const auto tris = make_box({-1, -1, -1}, {1, 2, 3});
    ASSERT_EQ(tris.size(), 12u);
    const Vec3 centre{0, 0.5, 1};
    for (const auto& t : tris) {
        const Vec3 n = cross(t[1] - t[0], t[2] - t[0]);
        const Vec3 c = (t[0] + t[1] + t[2]) / 3.0;
        EXPECT_GT(dot(n, c - centre), 0.0);
    }
}

}  // namespace
}  // namespace hmb
