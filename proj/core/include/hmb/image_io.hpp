#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hmb/math.hpp"

namespace hmb {

/// 8-bit RGB PNG. Channels are clamped to [0,1] and rounded.
void write_png(const std::string& path, const Image& img);
Image read_png(const std::string& path);

/// Binary P6 PPM.
void write_ppm(const std::string& path, const Image& img);
Image read_ppm(const std::string& path);

/// Picks PNG or PPM from the file extension.
void write_image(const std::string& path, const Image& img);
Image read_image(const std::string& path);

/// Binary P5 PGM, 255 where marked.
void write_pgm(const std::string& path, const Mask& mask);

/// Raw plane dump: "HMBP", then width, height and channel count as little-endian uint32,
/// then row-major interleaved little-endian float32.
struct PlaneDump {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t channels = 0;
    std::vector<float> values;
};

void write_plane_dump(const std::string& path, const PlaneDump& dump);
PlaneDump read_plane_dump(const std::string& path);

PlaneDump to_dump(const Image& img);
PlaneDump to_dump(const Plane<double>& plane);
PlaneDump to_dump(const Plane<Vec2>& plane);
PlaneDump to_dump(const Plane<Vec3>& plane);
PlaneDump to_dump(const Plane<int>& plane);
PlaneDump to_dump(const Mask& mask);

}  // namespace hmb
