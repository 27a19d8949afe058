// Per-pass timings on the bundled occluder scene at 320x240.

#include <benchmark/benchmark.h>

#include "hmb/ground_truth.hpp"
#include "hmb/motion_blur.hpp"
#include "hmb/ray_mask.hpp"
#include "hmb/ray_reveal.hpp"
#include "hmb/scenes.hpp"

namespace {

using namespace hmb;

struct Fixture {
    SceneFile file = scenes::occluder_pattern();
    Bvh bvh = build_bvh(file.scene, 1.0);
    FrameBuffers gbuffer = render_gbuffer(file.scene, bvh);
    RayMaskStages masks = build_ray_mask(gbuffer, {});
    FilterParams filter;
    TileGrid tiles = neighbor_max(tile_max(gbuffer.velocity, filter.tile), filter.tile.n);
};

const Fixture& fixture() {
    static const Fixture f;
    return f;
}

void BM_BvhBuild(benchmark::State& state) {
    const Scene& s = fixture().file.scene;
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_bvh(s, 1.0));
    }
    state.counters["triangles"] = static_cast<double>(s.triangle_count());
}

void BM_PrimaryRays(benchmark::State& state) {
    const Fixture& f = fixture();
    const Camera& cam = f.file.scene.camera;
    for (auto _ : state) {
        int hits = 0;
        for (int y = 0; y < cam.height; ++y)
            for (int x = 0; x < cam.width; ++x) hits += f.bvh.intersect(cam.pixel_ray(x, y), 0.0, kInfinity) ? 1 : 0;
        benchmark::DoNotOptimize(hits);
    }
    state.SetItemsProcessed(state.iterations() * cam.width * cam.height);
}

void BM_GBuffer(benchmark::State& state) {
    const Fixture& f = fixture();
    for (auto _ : state) {
        benchmark::DoNotOptimize(render_gbuffer(f.file.scene, f.bvh));
    }
}

void BM_TileDilate(benchmark::State& state) {
    const Fixture& f = fixture();
    for (auto _ : state) {
        benchmark::DoNotOptimize(neighbor_max(tile_max(f.gbuffer.velocity, f.filter.tile), f.filter.tile.n));
    }
}

void BM_RayMask(benchmark::State& state) {
    const Fixture& f = fixture();
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_ray_mask(f.gbuffer, {}));
    }
}

void BM_RevealPass(benchmark::State& state) {
    const Fixture& f = fixture();
    for (auto _ : state) {
        benchmark::DoNotOptimize(reveal_pass(f.file.scene, f.bvh, f.gbuffer, f.masks.ray_mask, {}));
    }
    state.counters["masked"] = count_marked(f.masks.ray_mask);
}

void BM_Gather(benchmark::State& state) {
    const Fixture& f = fixture();
    FilterParams p = f.filter;
    p.sample_count = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gather_blur(BlurSource::from(f.gbuffer), f.tiles, p));
    }
}

void BM_GroundTruth(benchmark::State& state) {
    const Scene& s = fixture().file.scene;
    OracleParams p;
    p.rpp = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(render_ground_truth(s, p));
    }
}

BENCHMARK(BM_BvhBuild)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrimaryRays)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GBuffer)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TileDilate)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RayMask)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RevealPass)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gather)->Arg(5)->Arg(15)->Arg(31)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GroundTruth)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
