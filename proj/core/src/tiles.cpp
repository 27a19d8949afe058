#include "hmb/tiles.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "hmb/parallel.hpp"

namespace hmb {

void TileParams::validate(int width, int height) const {
    if (m <= 0) {
        throw std::invalid_argument("tile size must be positive");
    }
    if (width % m != 0 || height % m != 0) {
        throw std::invalid_argument("tile size " + std::to_string(m) + " must divide resolution " +
                                    std::to_string(width) + "x" + std::to_string(height));
    }
    if (n < 1 || n % 2 == 0) {
        throw std::invalid_argument("neighborhood size must be odd and >= 1");
    }
}

Vec2 clamp_velocity(Vec2 v, double m) {
    const double len2 = v.length_squared();
    if (len2 <= m * m) {
        return v;
    }
    return v * (m / std::sqrt(len2));
}

TileGrid tile_max(const Plane<Vec2>& velocities, const TileParams& params) {
    params.validate(velocities.width(), velocities.height());
    const int m = params.m;
    TileGrid grid{m, Plane<Vec2>(velocities.width() / m, velocities.height() / m)};
    parallel_rows(grid.rows(), [&](int ty) {
        for (int tx = 0; tx < grid.columns(); ++tx) {
            Vec2 best;
            double best_len2 = -1.0;
            for (int y = ty * m; y < (ty + 1) * m; ++y) {
                for (int x = tx * m; x < (tx + 1) * m; ++x) {
                    const Vec2 v = clamp_velocity(velocities.at(x, y), m);
                    const double len2 = v.length_squared();
                    if (len2 > best_len2) {
                        best = v;
                        best_len2 = len2;
                    }
                }
            }
            grid.tiles.at(tx, ty) = best;
        }
    });
    return grid;
}

TileGrid neighbor_max(const TileGrid& grid, int n) {
    if (n < 1 || n % 2 == 0) {
        throw std::invalid_argument("neighborhood size must be odd and >= 1");
    }
    const int r = n / 2;
    TileGrid out{grid.tile_length, Plane<Vec2>(grid.columns(), grid.rows())};
    for (int ty = 0; ty < grid.rows(); ++ty) {
        for (int tx = 0; tx < grid.columns(); ++tx) {
            Vec2 best;
            double best_len2 = -1.0;
            for (int y = std::max(0, ty - r); y <= std::min(grid.rows() - 1, ty + r); ++y) {
                for (int x = std::max(0, tx - r); x <= std::min(grid.columns() - 1, tx + r); ++x) {
                    const Vec2& v = grid.tiles.at(x, y);
                    const double len2 = v.length_squared();
                    if (len2 > best_len2) {
                        best = v;
                        best_len2 = len2;
                    }
                }
            }
            out.tiles.at(tx, ty) = best;
        }
    }
    return out;
}

long window_pixel_count(const TileGrid& grid, int tx, int ty, int n) {
    const int r = n / 2;
    const long cols = std::min(grid.columns() - 1, tx + r) - std::max(0, tx - r) + 1;
    const long rows = std::min(grid.rows() - 1, ty + r) - std::max(0, ty - r) + 1;
    return cols * rows * grid.tile_length * grid.tile_length;
}

}  // namespace hmb
