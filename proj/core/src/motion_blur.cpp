#include "hmb/motion_blur.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hmb/parallel.hpp"
#include "hmb/random.hpp"

namespace hmb {

namespace {

// saturate(1 - ds/v) with the zero-speed limit: only the coincident sample survives.
double speed_falloff(double delta_s, double v) {
    if (v > 0.0) {
        return saturate(1.0 - delta_s / v);
    }
    return delta_s == 0.0 ? 1.0 : 0.0;
}

}  // namespace

void FilterParams::validate() const {
    if (sample_count < 1) {
        throw std::invalid_argument("sample count must be >= 1");
    }
    if (!(soft_z_extent > 0.0)) {
        throw std::invalid_argument("soft z extent must be positive");
    }
    if (!(fg_edge_boost >= 1.0) || !(mask_bg_factor >= 1.0)) {
        throw std::invalid_argument("weight magnifications must be >= 1");
    }
}

double smoothstep(double a, double b, double x) {
    if (!(a < b)) {
        throw std::invalid_argument("smoothstep requires a < b");
    }
    const double t = saturate((x - a) / (b - a));
    return t * t * (3.0 - 2.0 * t);
}

double cylinder(double v, double s) {
    if (v == 0.0) {
        return s == 0.0 ? 1.0 : 0.0;
    }
    return 1.0 - smoothstep(0.95 * v, 1.05 * v, s);
}

WeightTerms sample_weight(double z_target, double z_sample, double v_target, double v_sample,
                          double delta_s, double soft_z_extent) {
    // Equal depths (two misses included) are neither in front nor behind.
    const double z = z_target == z_sample ? 0.0 : (z_target - z_sample) / soft_z_extent;
    WeightTerms t;
    t.w_f = saturate(1.0 + z) * speed_falloff(delta_s, v_sample);
    t.w_b = saturate(1.0 - z) * speed_falloff(delta_s, v_target);
    t.w_s = cylinder(v_sample, delta_s) * cylinder(v_target, delta_s) * 2.0;
    t.w = t.w_f + t.w_b + t.w_s;
    return t;
}

BlurOutput::BlurOutput(int width, int height)
    : color(width, height),
      fg_weight_sum(width, height, 0.0),
      bg_weight_sum(width, height, 0.0),
      total_weight(width, height, 0.0) {}

BlurOutput gather_blur(const BlurSource& input, const TileGrid& tiles, const FilterParams& params) {
    const int w = input.width();
    const int h = input.height();
    if (tiles.columns() * tiles.tile_length != w || tiles.rows() * tiles.tile_length != h) {
        throw std::invalid_argument("tile grid does not cover the blur input");
    }
    const double m = tiles.tile_length;
    const int samples = params.sample_count;
    const double sign = params.direction == SampleDirection::Leading ? 1.0 : -1.0;

    BlurOutput out(w, h);
    parallel_rows(h, [&](int y) {
        for (int x = 0; x < w; ++x) {
            const Rgb target_color = input.color->at(x, y);
            out.color.at(x, y) = target_color;
            if (!input.usable(x, y)) {
                continue;
            }
            out.total_weight.at(x, y) = 1.0;
            const Vec2 dominant = tiles.at_pixel(x, y);
            if (dominant.length() < kMinBlurSpeed || samples < 2) {
                continue;
            }

            const double z_t = input.depth->at(x, y);
            const double v_t = clamp_velocity(input.velocity->at(x, y), m).length();
            const double jitter =
                params.jitter ? keyed_uniform(x, y, 0, params.jitter_seed) - 0.5 : 0.0;

            Rgb sum = target_color;
            double total = 1.0;
            double fg = 0.0;
            double bg = 0.0;
            for (int i = 1; i < samples; ++i) {
                const double f = std::clamp((i + jitter) / (samples - 1), 0.0, 1.0);
                const int sx = std::clamp(nearest_pixel(x + sign * f * dominant.x), 0, w - 1);
                const int sy = std::clamp(nearest_pixel(y + sign * f * dominant.y), 0, h - 1);
                if (!input.usable(sx, sy)) {
                    continue;
                }
                const double delta_s = std::hypot(sx - x, sy - y);
                const double z_s = input.depth->at(sx, sy);
                const double v_s = clamp_velocity(input.velocity->at(sx, sy), m).length();

                WeightTerms t = sample_weight(z_t, z_s, v_t, v_s, delta_s, params.soft_z_extent);
                if (z_t - z_s >= params.soft_z_extent) {
                    t.w_f *= params.fg_edge_boost;
                    t.w = t.w_f + t.w_b + t.w_s;
                }
                fg += t.w_f;
                bg += t.w_b + t.w_s;
                sum += input.color->at(sx, sy) * t.w;
                total += t.w;
            }
            out.color.at(x, y) = sum / total;
            out.fg_weight_sum.at(x, y) = fg;
            out.bg_weight_sum.at(x, y) = bg;
            out.total_weight.at(x, y) = total;
        }
    });
    return out;
}

Image composite(const BlurOutput& pp_raster, const BlurOutput& pp_reveal, const Mask& mask,
                const FilterParams& params) {
    const int w = pp_raster.color.width();
    const int h = pp_raster.color.height();
    if (!pp_reveal.color.same_shape(w, h) || !mask.same_shape(w, h)) {
        throw std::invalid_argument("composite inputs differ in resolution");
    }
    const double k = params.mask_bg_factor;
    Image out = pp_raster.color;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double reveal_weight = pp_reveal.total_weight.at(x, y);
            if (mask.at(x, y) == 0 || reveal_weight <= 0.0) {
                continue;
            }
            const double fg = pp_raster.fg_weight_sum.at(x, y) / k;
            const double bg = reveal_weight * k;
            out.at(x, y) =
                (pp_raster.color.at(x, y) * fg + pp_reveal.color.at(x, y) * bg) / (fg + bg);
        }
    }
    return out;
}

}  // namespace hmb
