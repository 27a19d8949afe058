#pragma once

#include "hmb/math.hpp"

namespace hmb {

struct TileParams {
    int m = 40;  // tile length, pixels
    int n = 3;   // neighborhood length, tiles

    /// Throws std::invalid_argument unless m divides both dimensions and n is odd and >= 1.
    void validate(int width, int height) const;
};

/// Dominant velocity per tile, pixels per exposure, magnitudes bounded by the tile length.
struct TileGrid {
    int tile_length = 0;
    Plane<Vec2> tiles;

    int columns() const { return tiles.width(); }
    int rows() const { return tiles.height(); }

    /// Velocity governing the gather at a pixel.
    const Vec2& at_pixel(int x, int y) const {
        return tiles.at(x / tile_length, y / tile_length);
    }
};

/// Scales v down to magnitude m when longer, preserving direction.
Vec2 clamp_velocity(Vec2 v, double m);

/// Clamped velocity of maximum magnitude in each m x m tile. Ties keep the first pixel in
/// row-major order.
TileGrid tile_max(const Plane<Vec2>& velocities, const TileParams& params);

/// Maximum-magnitude tile velocity over each n x n window; windows are truncated at the grid
/// edge and ties keep the first tile in row-major window order.
TileGrid neighbor_max(const TileGrid& grid, int n);

/// Number of pixels an n x n dilation window centered on tile (tx, ty) covers.
long window_pixel_count(const TileGrid& grid, int tx, int ty, int n);

}  // namespace hmb
