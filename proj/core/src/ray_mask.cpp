#include "hmb/ray_mask.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "hmb/parallel.hpp"

namespace hmb {

namespace {

// Separable 5x5 Sobel: binomial smoothing across, first-difference derivative along the axis.
constexpr std::array<double, 5> kSmooth{1.0, 4.0, 6.0, 4.0, 1.0};
constexpr std::array<double, 5> kDerive{-1.0, -2.0, 0.0, 2.0, 1.0};

double sobel_depth(const Plane<double>& depth, int x, int y) {
    return std::isfinite(depth.clamped(x, y)) ? depth.clamped(x, y) : kSobelFarDepth;
}

}  // namespace

void RayMaskParams::validate() const {
    if (!(edge_threshold > 0.0 && edge_threshold < 1.0)) {
        throw std::invalid_argument("edge threshold must lie in (0, 1)");
    }
    if (!(soft_z_extent > 0.0)) {
        throw std::invalid_argument("soft z extent must be positive");
    }
    if (range_samples < 1) {
        throw std::invalid_argument("range samples must be >= 1");
    }
}

Mask candidate_filter(const FrameBuffers& buffers, const RayMaskParams& params) {
    const int w = buffers.width();
    const int h = buffers.height();
    Mask out(w, h, 0);
    parallel_rows(h, [&](int y) {
        for (int x = 0; x < w; ++x) {
            const Vec2 v = buffers.velocity.at(x, y);
            if (v.length_squared() == 0.0 || buffers.mesh_id.at(x, y) == kMissId) {
                continue;
            }
            const int nx = std::clamp(nearest_pixel(x + v.x), 0, w - 1);
            const int ny = std::clamp(nearest_pixel(y + v.y), 0, h - 1);
            const bool other_mesh = buffers.mesh_id.at(nx, ny) != buffers.mesh_id.at(x, y);
            const bool deeper =
                buffers.depth.at(nx, ny) - buffers.depth.at(x, y) > params.soft_z_extent;
            out.at(x, y) = other_mesh && deeper ? 1 : 0;
        }
    });
    return out;
}

double sobel_response(const Plane<double>& depth, const Plane<Vec3>& normal, int x, int y) {
    // Each kernel row is antisymmetric, so pair the taps as differences; constant planes then
    // cancel exactly instead of leaving rounding residue.
    double dgx = 0.0;
    double dgy = 0.0;
    Vec3 ngx;
    Vec3 ngy;
    for (int k = 0; k < 5; ++k) {
        const int o = k - 2;
        const double s = kSmooth[k];
        for (int d = 1; d <= 2; ++d) {
            const double g = kDerive[2 + d];
            dgx += s * g * (sobel_depth(depth, x + d, y + o) - sobel_depth(depth, x - d, y + o));
            dgy += s * g * (sobel_depth(depth, x + o, y + d) - sobel_depth(depth, x + o, y - d));
            ngx += (normal.clamped(x + d, y + o) - normal.clamped(x - d, y + o)) * (s * g);
            ngy += (normal.clamped(x + o, y + d) - normal.clamped(x + o, y - d)) * (s * g);
        }
    }
    const double delta_depth = std::sqrt(dgx * dgx + dgy * dgy);
    const double delta_normal = std::sqrt(ngx.length_squared() + ngy.length_squared());
    return delta_depth + delta_normal;
}

double edge_strength(const Plane<double>& depth, const Plane<Vec3>& normal, int x, int y) {
    const double response = sobel_response(depth, normal, x, y);
    return std::clamp(1.0 - 1.0 / (response + 1.0), 0.0, 1.0);
}

Mask build_edge_mask(const Mask& candidates, const FrameBuffers& buffers,
                     const RayMaskParams& params) {
    const int w = buffers.width();
    const int h = buffers.height();
    Mask out(w, h, 0);
    parallel_rows(h, [&](int y) {
        for (int x = 0; x < w; ++x) {
            if (candidates.at(x, y) != 0 &&
                edge_strength(buffers.depth, buffers.normal, x, y) >= params.edge_threshold) {
                out.at(x, y) = 1;
            }
        }
    });
    return out;
}

Mask range_check(const Mask& edge_mask, const Plane<Vec2>& velocities, const RayMaskParams& params) {
    const int w = edge_mask.width();
    const int h = edge_mask.height();
    const int samples = std::max(params.range_samples, 1);
    Mask out(w, h, 0);
    parallel_rows(h, [&](int y) {
        for (int x = 0; x < w; ++x) {
            const Vec2 v = velocities.at(x, y);
            if (v.length_squared() == 0.0) {
                continue;
            }
            for (int i = 0; i < samples; ++i) {
                const double f = samples == 1 ? 0.0 : static_cast<double>(i) / (samples - 1);
                const int sx = std::clamp(nearest_pixel(x + f * v.x), 0, w - 1);
                const int sy = std::clamp(nearest_pixel(y + f * v.y), 0, h - 1);
                if (edge_mask.at(sx, sy) != 0) {
                    out.at(x, y) = 1;
                    break;
                }
            }
        }
    });
    return out;
}

RayMaskStages build_ray_mask(const FrameBuffers& buffers, const RayMaskParams& params) {
    RayMaskStages stages;
    stages.candidates = candidate_filter(buffers, params);
    stages.edges = build_edge_mask(stages.candidates, buffers, params);
    stages.ray_mask = range_check(stages.edges, buffers.velocity, params);
    return stages;
}

}  // namespace hmb
