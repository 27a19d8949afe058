#pragma once

#include "hmb/gbuffer.hpp"

namespace hmb {

struct RayMaskParams {
    double edge_threshold = 0.9;  // e, in (0,1)
    double soft_z_extent = 0.03;  // meters
    int range_samples = 15;

    void validate() const;
};

/// Depth substituted for miss pixels inside the Sobel window so the derivative stays finite.
inline constexpr double kSobelFarDepth = 1.0e4;

/// Pixels moving onto a different, deeper surface after one per-exposure displacement:
/// speed > 0, mesh ID differs at the advanced position, and the advanced depth exceeds the
/// pixel's depth by more than soft_z_extent.
Mask candidate_filter(const FrameBuffers& buffers, const RayMaskParams& params);

/// Unnormalized 5x5 Sobel response x = depth gradient magnitude + normal gradient length.
double sobel_response(const Plane<double>& depth, const Plane<Vec3>& normal, int x, int y);

/// saturate(1 - 1/(x + 1)) of the Sobel response.
double edge_strength(const Plane<double>& depth, const Plane<Vec3>& normal, int x, int y);

/// Candidates whose edge strength reaches the threshold.
Mask build_edge_mask(const Mask& candidates, const FrameBuffers& buffers,
                     const RayMaskParams& params);

/// Moving pixels that find a marked edge pixel among range_samples equally spaced points from
/// themselves (offset 0 included) to one full velocity ahead.
Mask range_check(const Mask& edge_mask, const Plane<Vec2>& velocities, const RayMaskParams& params);

struct RayMaskStages {
    Mask candidates;
    Mask edges;
    Mask ray_mask;
};

RayMaskStages build_ray_mask(const FrameBuffers& buffers, const RayMaskParams& params);

}  // namespace hmb
