#pragma once

#include <cstdint>
#include <optional>

#include "hmb/scene.hpp"

namespace hmb {

struct OracleParams {
    int rpp = 200;
    std::uint64_t seed = 0;
    std::optional<double> fixed_tau;  // every ray at this exposure time instead of sampling

    void validate() const;
};

/// Distributed ray tracing over the exposure: rpp stratified, jittered exposure times per pixel,
/// box-filtered. Output depends only on the scene and params, never on the thread count.
Image render_ground_truth(const Scene& scene, const OracleParams& params);

}  // namespace hmb
