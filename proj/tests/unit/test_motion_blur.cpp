#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hmb/motion_blur.hpp"
#include "hmb/scenes.hpp"
#include "test_support.hpp"

namespace hmb {
namespace {

// Scalar restatement of the weight model, kept separate from the library code.
namespace ref {
double sat(double x) { return std::min(std::max(x, 0.0), 1.0); }
double step(double a, double b, double x) {
    const double t = sat((x - a) / (b - a));
    return t * t * (3.0 - 2.0 * t);
}
double cyl(double v, double s) {
    if (v == 0.0) return s == 0.0 ? 1.0 : 0.0;
    return 1.0 - step(0.95 * v, 1.05 * v, s);
}
double ramp(double d, double v) {
    if (v == 0.0) return d == 0.0 ? 1.0 : 0.0;
    return sat(1.0 - d / v);
}
struct W {
    double f, b, s;
};
W weight(double zt, double zs, double vt, double vs, double d, double sze) {
    const double z = (zt == zs) ? 0.0 : (zt - zs) / sze;
    return {sat(1.0 + z) * ramp(d, vs), sat(1.0 - z) * ramp(d, vt), 2.0 * cyl(vs, d) * cyl(vt, d)};
}
}  // namespace ref

FrameBuffers edge_buffers(int w, int h, double left_speed, double right_speed) {
    FrameBuffers fb(w, h, {});
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            PixelRecord r;
            const bool left = x < w / 2;
            r.color = left ? Rgb{0.9, 0.2, 0.1} : Rgb{0.1, 0.3, 0.8};
            r.depth = left ? 2.0 : 3.0;
            r.velocity = {left ? left_speed : right_speed, 0.0};
            r.normal = {0, 0, 1};
            r.mesh_id = left ? 1 : 0;
            fb.set(x, y, r);
        }
    }
    return fb;
}

TEST(Saturate, Examples) {
    EXPECT_EQ(saturate(-0.5), 0.0);
    EXPECT_EQ(saturate(0.3), 0.3);
    EXPECT_EQ(saturate(1.7), 1.0);
}

TEST(Smoothstep, Examples) {
    EXPECT_EQ(smoothstep(1.0, 3.0, 0.5), 0.0);
    EXPECT_EQ(smoothstep(1.0, 3.0, 1.0), 0.0);
    EXPECT_EQ(smoothstep(1.0, 3.0, 3.0), 1.0);
    EXPECT_EQ(smoothstep(1.0, 3.0, 9.0), 1.0);
    EXPECT_DOUBLE_EQ(smoothstep(1.0, 3.0, 2.0), 0.5);
    EXPECT_NEAR(smoothstep(0.0, 1.0, 0.25) + smoothstep(0.0, 1.0, 0.75), 1.0, 1e-15);
    EXPECT_THROW(smoothstep(2.0, 2.0, 1.0), std::invalid_argument);
    EXPECT_THROW(smoothstep(3.0, 2.0, 1.0), std::invalid_argument);
}

TEST(Cylinder, Examples) {
    EXPECT_EQ(cylinder(10, 5), 1.0);
    EXPECT_EQ(cylinder(10, 10.5), 0.0);
    EXPECT_DOUBLE_EQ(cylinder(10, 10), 0.5);
    EXPECT_EQ(cylinder(0, 0), 1.0);
    EXPECT_EQ(cylinder(0, 1e-9), 0.0);
}

TEST(SampleWeight, CoincidentSample) {
    const WeightTerms t = sample_weight(2.0, 2.0, 10, 10, 0, 0.03);
    EXPECT_EQ(t.w_f, 1.0);
    EXPECT_EQ(t.w_b, 1.0);
    EXPECT_EQ(t.w_s, 2.0);
    EXPECT_EQ(t.w, 4.0);
}

TEST(SampleWeight, TargetFarBehindSampleHasNoBackgroundTerm) {
    const WeightTerms t = sample_weight(2.06, 2.0, 10, 10, 3, 0.03);
    EXPECT_EQ(t.w_b, 0.0);
    EXPECT_GT(t.w_f, 0.0);
}

TEST(SampleWeight, HandEvaluation) {
    // z = 0.5, v_s = 8, v_t = 4, ds = 6.
    const double sze = 0.03;
    const WeightTerms t = sample_weight(2.0 + 0.5 * sze, 2.0, 4, 8, 6, sze);
    EXPECT_NEAR(t.w_f, 0.25, 1e-12);
    EXPECT_NEAR(t.w_b, 0.0, 1e-12);
    EXPECT_NEAR(t.w_s, 0.0, 1e-12);
    EXPECT_NEAR(t.w, 0.25, 1e-12);
}

TEST(SampleWeight, ZeroSpeeds) {
    const WeightTerms still = sample_weight(2.0, 2.0, 0, 0, 0, 0.03);
    EXPECT_EQ(still.w, 4.0);
    const WeightTerms apart = sample_weight(2.0, 2.0, 0, 0, 1, 0.03);
    EXPECT_EQ(apart.w, 0.0);
}

TEST(SampleWeight, TwoMissesCountAsEqualDepth) {
    const WeightTerms t = sample_weight(kInfinity, kInfinity, 5, 5, 2, 0.03);
    EXPECT_FALSE(std::isnan(t.w));
    EXPECT_NEAR(t.w_f, 0.6, 1e-12);
    EXPECT_NEAR(t.w_b, 0.6, 1e-12);
}

TEST(SampleWeight, RandomTuplesMatchReferenceAndBounds) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> depth(0.5, 6.0);
    std::uniform_real_distribution<double> speed(0.0, 45.0);
    std::uniform_real_distribution<double> dist(0.0, 45.0);
    for (int i = 0; i < 10000; ++i) {
        const double zt = depth(rng);
        const double zs = (i % 10 == 0) ? zt : depth(rng);
        double vt = speed(rng), vs = speed(rng), ds = dist(rng);
        if (i % 17 == 0) vt = 0.0;
        if (i % 19 == 0) ds = 0.0;
        const WeightTerms t = sample_weight(zt, zs, vt, vs, ds, 0.03);
        const ref::W r = ref::weight(zt, zs, vt, vs, ds, 0.03);
        ASSERT_NEAR(t.w_f, r.f, 1e-12);
        ASSERT_NEAR(t.w_b, r.b, 1e-12);
        ASSERT_NEAR(t.w_s, r.s, 1e-12);
        ASSERT_EQ(t.w, t.w_f + t.w_b + t.w_s);
        ASSERT_GE(t.w_f, 0.0);
        ASSERT_GE(t.w_b, 0.0);
        ASSERT_GE(t.w_s, 0.0);
        ASSERT_LE(t.w_s, 2.0);
    }
}

TEST(FilterParams, Validation) {
    FilterParams p;
    EXPECT_NO_THROW(p.validate());
    p.sample_count = 0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.fg_edge_boost = 0.5;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.soft_z_extent = 0.0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Gather, ZeroVelocityIsIdentity) {
    const FrameBuffers fb = edge_buffers(80, 40, 0.0, 0.0);
    const FilterParams p;
    const BlurOutput out = gather_blur(BlurSource::from(fb), neighbor_max(tile_max(fb.velocity, p.tile), 3), p);
    EXPECT_EQ(out.color, fb.color);
    for (double w : out.fg_weight_sum) EXPECT_EQ(w, 0.0);
    for (double w : out.bg_weight_sum) EXPECT_EQ(w, 0.0);
}

TEST(Gather, SubHalfPixelNeighbourhoodIsIdentity) {
    const FrameBuffers fb = edge_buffers(80, 40, 0.4, 0.0);
    const FilterParams p;
    const TileGrid tiles = neighbor_max(tile_max(fb.velocity, p.tile), 3);
    EXPECT_EQ(gather_blur(BlurSource::from(fb), tiles, p).color, fb.color);
}

TEST(Gather, UniformColourStaysUniform) {
    FrameBuffers fb = edge_buffers(80, 40, 17.0, 9.0);
    for (auto& c : fb.color) c = {0.4, 0.5, 0.6};
    const FilterParams p;
    const BlurOutput out =
        gather_blur(BlurSource::from(fb), neighbor_max(tile_max(fb.velocity, p.tile), 3), p);
    for (const Rgb& c : out.color) {
        EXPECT_NEAR(c.r, 0.4, 1e-12);
        EXPECT_NEAR(c.g, 0.5, 1e-12);
        EXPECT_NEAR(c.b, 0.6, 1e-12);
    }
}

void expect_matches_scalar_gather(double left_speed, double right_speed, SampleDirection dir) {
    const int w = 80, h = 40;
    const FrameBuffers fb = edge_buffers(w, h, left_speed, right_speed);
    FilterParams p;
    p.direction = dir;
    const TileGrid tiles = neighbor_max(tile_max(fb.velocity, p.tile), 3);
    const BlurOutput out = gather_blur(BlurSource::from(fb), tiles, p);

    const double vn = std::min(std::max(std::abs(left_speed), std::abs(right_speed)), 40.0);
    const double sign = dir == SampleDirection::Leading ? 1.0 : -1.0;
    const int S = p.sample_count;
    for (int x = 0; x < w; ++x) {
        const double zt = fb.depth.at(x, 0);
        const double vt = std::min(std::abs(fb.velocity.at(x, 0).x), 40.0);
        Rgb sum = fb.color.at(x, 0);
        double total = 1.0, fg = 0.0, bg = 0.0;
        for (int i = 1; i < S; ++i) {
            const double f = static_cast<double>(i) / (S - 1);
            const double pos = x + sign * f * vn;
            const int sx = std::clamp(static_cast<int>(std::floor(pos + 0.5)), 0, w - 1);
            const double d = std::abs(sx - x);
            const double zs = fb.depth.at(sx, 0);
            const double vs = std::min(std::abs(fb.velocity.at(sx, 0).x), 40.0);
            ref::W t = ref::weight(zt, zs, vt, vs, d, p.soft_z_extent);
            if (zt - zs >= p.soft_z_extent) t.f *= p.fg_edge_boost;
            const double ws = t.f + t.b + t.s;
            sum += fb.color.at(sx, 0) * ws;
            total += ws;
            fg += t.f;
            bg += t.b + t.s;
        }
        const Rgb expected = sum / total;
        for (int y = 0; y < h; y += 13) {
            const Rgb got = out.color.at(x, y);
            ASSERT_NEAR(got.r, expected.r, 1e-6) << "x=" << x;
            ASSERT_NEAR(got.g, expected.g, 1e-6) << "x=" << x;
            ASSERT_NEAR(got.b, expected.b, 1e-6) << "x=" << x;
            ASSERT_NEAR(out.fg_weight_sum.at(x, y), fg, 1e-9);
            ASSERT_NEAR(out.bg_weight_sum.at(x, y), bg, 1e-9);
            ASSERT_NEAR(out.total_weight.at(x, y), total, 1e-9);
        }
    }
}

TEST(Gather, OneDimensionalEdgeMatchesScalarGather) {
    expect_matches_scalar_gather(10.0, 10.0, SampleDirection::Leading);
    expect_matches_scalar_gather(14.0, 0.0, SampleDirection::Leading);
    expect_matches_scalar_gather(14.0, 0.0, SampleDirection::Trailing);
    expect_matches_scalar_gather(55.0, 3.0, SampleDirection::Leading);  // beyond the clamp
}

TEST(Gather, ConvexCombinationOfSampledColours) {
    const SceneFile file = scenes::random_quads(4);
    const FrameBuffers fb = render_gbuffer(file.scene);
    FilterParams p;
    const TileGrid tiles = neighbor_max(tile_max(fb.velocity, p.tile), 3);
    const BlurOutput out = gather_blur(BlurSource::from(fb), tiles, p);
    Rgb lo{1, 1, 1}, hi{0, 0, 0};
    for (const Rgb& c : fb.color) {
        lo = {std::min(lo.r, c.r), std::min(lo.g, c.g), std::min(lo.b, c.b)};
        hi = {std::max(hi.r, c.r), std::max(hi.g, c.g), std::max(hi.b, c.b)};
    }
    for (const Rgb& c : out.color) {
        EXPECT_GE(c.r, lo.r - 1e-9);
        EXPECT_LE(c.r, hi.r + 1e-9);
    }
}

TEST(Gather, BlurExtentGrowsWithVelocity) {
    FrameBuffers fb = render_gbuffer(scenes::moving_quad().scene);
    FilterParams p;
    p.tile.m = 20;
    p.tile.n = 3;
    auto changed = [&](const FrameBuffers& b) {
        const TileGrid tiles = neighbor_max(tile_max(b.velocity, p.tile), p.tile.n);
        const BlurOutput out = gather_blur(BlurSource::from(b), tiles, p);
        Mask m(b.width(), b.height(), 0);
        for (int y = 0; y < b.height(); ++y) {
            for (int x = 0; x < b.width(); ++x) {
                const Rgb d = out.color.at(x, y) - b.color.at(x, y);
                m.at(x, y) = std::max({std::abs(d.r), std::abs(d.g), std::abs(d.b)}) > 1e-6;
            }
        }
        return m;
    };
    const Mask base = changed(fb);
    for (auto& v : fb.velocity) v = v * 1.5;  // 12 -> 18 px, still below the tile clamp
    const Mask faster = changed(fb);
    EXPECT_GT(count_marked(base), 0);
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (base.data()[i]) EXPECT_TRUE(faster.data()[i]) << i;
    }
    EXPECT_GE(count_marked(faster), count_marked(base));
}

TEST(Gather, InvalidRevealPixelsAreSkipped) {
    RevealBuffers rb(80, 40);
    for (int y = 0; y < 40; ++y) {
        for (int x = 0; x < 80; ++x) {
            rb.set(x, y, {{0.5, 0.5, 0.5}, 3.0, {12.0, 0.0}, x >= 20 && x < 30});
        }
    }
    rb.color.at(25, 5) = {1.0, 0.0, 0.0};
    FilterParams p;
    const TileGrid tiles = neighbor_max(tile_max(rb.velocity, p.tile), 3);
    const BlurOutput out = gather_blur(BlurSource::from(rb), tiles, p);
    EXPECT_EQ(out.total_weight.at(10, 5), 0.0);
    EXPECT_EQ(out.color.at(10, 5), rb.color.at(10, 5));
    EXPECT_GE(out.total_weight.at(22, 5), 1.0);
    EXPECT_GT(out.color.at(22, 5).r, 0.5);  // sees the red pixel three columns ahead
    // The last valid column only has invalid samples ahead of it.
    EXPECT_EQ(out.total_weight.at(29, 5), 1.0);
}

TEST(Gather, RejectsMismatchedTiles) {
    const FrameBuffers fb = edge_buffers(80, 40, 5.0, 5.0);
    TileGrid tiles;
    tiles.tile_length = 40;
    tiles.tiles = Plane<Vec2>(1, 1);
    EXPECT_THROW(gather_blur(BlurSource::from(fb), tiles, {}), std::invalid_argument);
}

TEST(Gather, JitterIsDeterministicPerSeed) {
    const FrameBuffers fb = render_gbuffer(scenes::moving_quad().scene);
    FilterParams p;
    p.tile.m = 20;
    p.jitter = true;
    p.jitter_seed = 3;
    const TileGrid tiles = neighbor_max(tile_max(fb.velocity, p.tile), 3);
    const Image a = gather_blur(BlurSource::from(fb), tiles, p).color;
    const Image b = gather_blur(BlurSource::from(fb), tiles, p).color;
    p.jitter_seed = 4;
    const Image c = gather_blur(BlurSource::from(fb), tiles, p).color;
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
}

BlurOutput uniform_output(int w, int h, Rgb color, double fg, double total) {
    BlurOutput o(w, h);
    for (auto& c : o.color) c = color;
    for (auto& v : o.fg_weight_sum) v = fg;
    for (auto& v : o.total_weight) v = total;
    return o;
}

TEST(Composite, EmptyMaskKeepsRasterBlur) {
    const BlurOutput raster = uniform_output(8, 8, {0.2, 0.4, 0.6}, 5.0, 9.0);
    const BlurOutput reveal = uniform_output(8, 8, {1, 1, 1}, 0.0, 4.0);
    EXPECT_EQ(composite(raster, reveal, Mask(8, 8, 0), {}), raster.color);
}

TEST(Composite, NoForegroundWeightGivesRevealColour) {
    const BlurOutput raster = uniform_output(4, 4, {0.2, 0.4, 0.6}, 0.0, 3.0);
    const BlurOutput reveal = uniform_output(4, 4, {0.9, 0.8, 0.7}, 0.0, 4.0);
    const Image out = composite(raster, reveal, Mask(4, 4, 1), {});
    for (const Rgb& c : out) {
        EXPECT_NEAR(c.r, 0.9, 1e-12);
        EXPECT_NEAR(c.g, 0.8, 1e-12);
        EXPECT_NEAR(c.b, 0.7, 1e-12);
    }
}

TEST(Composite, EqualWeightsBlendOneTenthRaster) {
    const Rgb cr{0.0, 0.5, 1.0};
    const Rgb cv{1.0, 0.5, 0.0};
    const BlurOutput raster = uniform_output(4, 4, cr, 6.0, 20.0);
    const BlurOutput reveal = uniform_output(4, 4, cv, 0.0, 6.0);
    Mask mask(4, 4, 0);
    mask.at(1, 2) = 1;
    const Image out = composite(raster, reveal, mask, {});
    const Rgb expected = cr * 0.1 + cv * 0.9;
    EXPECT_NEAR(out.at(1, 2).r, expected.r, 1e-12);
    EXPECT_NEAR(out.at(1, 2).g, expected.g, 1e-12);
    EXPECT_NEAR(out.at(1, 2).b, expected.b, 1e-12);
    EXPECT_EQ(out.at(0, 0), cr);
}

TEST(Composite, InvalidRevealFallsBackToRaster) {
    const BlurOutput raster = uniform_output(4, 4, {0.3, 0.3, 0.3}, 2.0, 5.0);
    const BlurOutput reveal = uniform_output(4, 4, {1, 0, 0}, 0.0, 0.0);
    EXPECT_EQ(composite(raster, reveal, Mask(4, 4, 1), {}), raster.color);
}

TEST(Composite, RejectsMismatchedInputs) {
    const BlurOutput a = uniform_output(4, 4, {}, 0, 1);
    const BlurOutput b = uniform_output(4, 5, {}, 0, 1);
    EXPECT_THROW(composite(a, b, Mask(4, 4, 0), {}), std::invalid_argument);
}

}  // namespace
}  // namespace hmb
