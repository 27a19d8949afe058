#pragma once

#include <cstdint>

namespace hmb {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based uniform in [0,1) keyed by pixel, sample index and seed; no shared state.
constexpr double keyed_uniform(std::uint32_t x, std::uint32_t y, std::uint32_t index,
                               std::uint64_t seed) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ ((static_cast<std::uint64_t>(x) << 32) | y));
    h = mix64(h ^ index);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace hmb
