// hmblur: render a scene through the raster, post-process, hybrid or ground-truth motion blur
// paths, or compare two images.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hmb/image_io.hpp"
#include "hmb/metrics.hpp"
#include "hmb/parallel.hpp"
#include "hmb/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string scene_path;
    std::string mode = "hybrid";
    std::string out = "out.png";
    std::optional<int> tile_size;
    std::optional<int> neighborhood;
    std::optional<int> samples;
    std::optional<double> exposure;
    std::optional<double> soft_z;
    std::optional<double> edge_threshold;
    std::optional<int> max_recursion;
    std::optional<double> luminance_eps;
    double fg_boost = 30.0;
    double mask_bg_factor = 3.0;
    int rpp = 200;
    std::uint64_t seed = 0;
    bool jitter = false;
    bool dump = false;
    std::vector<std::string> compare;
    unsigned threads = 0;
    std::string direction = "leading";
    bool no_reveal = false;
    bool full_precision = false;
    bool psnr_luma = false;
    bool ssim_rgb = false;
};

void dump_intermediates(const hmb::PipelineResult& r, const fs::path& out) {
    const fs::path dir = out.parent_path().empty() ? fs::path(".") : out.parent_path();
    const std::string stem = out.stem().string();
    auto plane = [&](const std::string& name, const hmb::PlaneDump& d) {
        hmb::write_plane_dump((dir / (stem + "_" + name + ".hmbp")).string(), d);
    };
    auto mask = [&](const std::string& name, const hmb::Mask& m) {
        hmb::write_pgm((dir / (stem + "_" + name + ".pgm")).string(), m);
    };
    if (r.gbuffer.width() > 0) {
        plane("color", hmb::to_dump(r.gbuffer.color));
        plane("depth", hmb::to_dump(r.gbuffer.depth));
        plane("velocity", hmb::to_dump(r.gbuffer.velocity));
        plane("normal", hmb::to_dump(r.gbuffer.normal));
        plane("mesh_id", hmb::to_dump(r.gbuffer.mesh_id));
    }
    if (r.raster_tiles.tiles.size() > 0) {
        plane("tiles", hmb::to_dump(r.raster_tiles.tiles));
    }
    if (r.masks.ray_mask.size() > 0) {
        mask("candidates", r.masks.candidates);
        mask("edge_mask", r.masks.edges);
        mask("ray_mask", r.masks.ray_mask);
    }
    if (r.reveal.width() > 0) {
        plane("reveal_color", hmb::to_dump(r.reveal.color));
        plane("reveal_depth", hmb::to_dump(r.reveal.depth));
        plane("reveal_velocity", hmb::to_dump(r.reveal.velocity));
        plane("reveal_valid", hmb::to_dump(r.reveal.valid));
    }
    if (r.reveal_tiles.tiles.size() > 0) {
        plane("reveal_tiles", hmb::to_dump(r.reveal_tiles.tiles));
    }
}

int compare_mode(const Options& opt) {
    const hmb::Image a = hmb::read_image(opt.compare[0]);
    const hmb::Image b = hmb::read_image(opt.compare[1]);
    hmb::MetricOptions mo;
    mo.quantize = !opt.full_precision;
    mo.psnr_channels = opt.psnr_luma ? hmb::MetricChannels::Luma : hmb::MetricChannels::Rgb;
    mo.ssim_channels = opt.ssim_rgb ? hmb::MetricChannels::Rgb : hmb::MetricChannels::Luma;
    const hmb::MetricReport rep = hmb::compare_images(a, b, mo);
    std::printf("PSNR=%.4f dB SSIM=%.6f\n", rep.psnr, rep.ssim);
    return 0;
}

int render_mode(const Options& opt) {
    const auto mode = hmb::parse_render_mode(opt.mode);
    if (!mode) {
        std::cerr << "error: unknown mode '" << opt.mode
                  << "' (expected raster, postprocess, hybrid or groundtruth)\n";
        return 1;
    }
    hmb::SceneFile file = hmb::load_scene(opt.scene_path);
    if (opt.exposure) {
        file.scene.exposure = *opt.exposure;
    }
    hmb::PipelineParams p = hmb::PipelineParams::for_scene(file);
    if (opt.tile_size) p.filter.tile.m = *opt.tile_size;
    if (opt.neighborhood) p.filter.tile.n = *opt.neighborhood;
    if (opt.samples) {
        p.filter.sample_count = *opt.samples;
        p.mask.range_samples = *opt.samples;
    }
    if (opt.soft_z) p.set_soft_z_extent(*opt.soft_z);
    if (opt.edge_threshold) p.mask.edge_threshold = *opt.edge_threshold;
    if (opt.max_recursion) p.reveal.max_recursion = *opt.max_recursion;
    if (opt.luminance_eps) p.reveal.luminance_epsilon = *opt.luminance_eps;
    p.filter.fg_edge_boost = opt.fg_boost;
    p.filter.mask_bg_factor = opt.mask_bg_factor;
    p.filter.jitter = opt.jitter;
    p.filter.jitter_seed = opt.seed;
    p.filter.direction =
        opt.direction == "trailing" ? hmb::SampleDirection::Trailing : hmb::SampleDirection::Leading;
    p.oracle.rpp = opt.rpp;
    p.oracle.seed = opt.seed;
    p.enable_reveal = !opt.no_reveal;

    const hmb::PipelineResult r = hmb::run_pipeline(file.scene, *mode, p);
    hmb::write_image(opt.out, r.output);
    if (opt.dump) {
        dump_intermediates(r, fs::path(opt.out));
    }

    double total = 0.0;
    for (const auto& t : r.timings) {
        std::printf("%-14s %10.3f ms\n", t.pass.c_str(), t.milliseconds);
        total += t.milliseconds;
    }
    std::printf("%-14s %10.3f ms\n", "Total", total);
    if (*mode == hmb::RenderMode::Hybrid) {
        std::printf("ray mask pixels: %d, rays cast: %ld\n", hmb::count_marked(r.masks.ray_mask),
                    r.reveal.rays_cast);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid rasterization / ray-traced motion blur renderer"};
    Options opt;
    app.add_option("--scene", opt.scene_path, "Scene description (JSON)");
    app.add_option("--mode", opt.mode, "raster | postprocess | hybrid | groundtruth")
        ->check(CLI::IsMember({"raster", "postprocess", "hybrid", "groundtruth"}));
    app.add_option("--out", opt.out, "Output image (.png or .ppm)");
    app.add_option("--tile-size", opt.tile_size, "Tile length m in pixels (default 40)");
    app.add_option("--neighborhood", opt.neighborhood, "Neighborhood length n in tiles (default 3)");
    app.add_option("--samples", opt.samples, "Gather and range-check samples (default 15)");
    app.add_option("--exposure", opt.exposure, "Exposure in seconds (overrides the scene)");
    app.add_option("--soft-z", opt.soft_z, "Soft z extent in meters");
    app.add_option("--edge-threshold", opt.edge_threshold, "Ray mask edge threshold e");
    app.add_option("--max-recursion", opt.max_recursion, "Ray reveal recursion limit (default 5)");
    app.add_option("--luminance-eps", opt.luminance_eps, "Ray reveal luminance tolerance (default 0.02)");
    app.add_option("--fg-boost", opt.fg_boost, "Foreground weight magnification")->capture_default_str();
    app.add_option("--mask-bg-factor", opt.mask_bg_factor, "In-mask background magnification")
        ->capture_default_str();
    app.add_option("--rpp", opt.rpp, "Ground-truth rays per pixel")->capture_default_str();
    app.add_option("--seed", opt.seed, "Seed for ground truth and jitter")->capture_default_str();
    app.add_flag("--jitter", opt.jitter, "Jitter gather sample positions per pixel");
    app.add_flag("--dump-intermediate", opt.dump, "Write G-buffer planes, masks and reveal buffers");
    app.add_option("--compare", opt.compare, "Compare two images and print PSNR/SSIM")->expected(2);
    app.add_option("--threads", opt.threads, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--sample-direction", opt.direction, "leading | trailing")
        ->check(CLI::IsMember({"leading", "trailing"}))
        ->capture_default_str();
    app.add_flag("--no-reveal", opt.no_reveal, "Skip the ray reveal stage in hybrid mode");
    app.add_flag("--full-precision", opt.full_precision, "Compare without 8-bit quantization");
    app.add_flag("--psnr-luma", opt.psnr_luma, "Compute PSNR on luma instead of RGB");
    app.add_flag("--ssim-rgb", opt.ssim_rgb, "Compute SSIM per RGB channel instead of luma");

    CLI11_PARSE(app, argc, argv);
    hmb::set_thread_count(opt.threads);

    try {
        if (!opt.compare.empty()) {
            return compare_mode(opt);
        }
        if (opt.scene_path.empty()) {
            std::cerr << "error: --scene is required unless --compare is given\n";
            return 2;
        }
        return render_mode(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
