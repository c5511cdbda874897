#include "tpmon/topology.hpp"

#include "tpmon/errors.hpp"

#include <algorithm>
#include <string>

namespace tpmon {

void validate(const Floorplan& fp) {
    if (fp.n_tiles < 1)
        throw DomainError("floorplan: n_tiles must be >= 1, got " + std::to_string(fp.n_tiles));
    if (fp.rows_per_tile < 1)
        throw DomainError("floorplan: rows_per_tile must be >= 1, got " +
                          std::to_string(fp.rows_per_tile));
    if (fp.cols_per_tile < 1)
        throw DomainError("floorplan: cols_per_tile must be >= 1, got " +
                          std::to_string(fp.cols_per_tile));
}

bool is_valid_core(const Floorplan& fp, const CoreId& c) {
    return c.tile >= 0 && c.tile < fp.n_tiles && c.row >= 0 && c.row < fp.rows_per_tile &&
           c.col >= 0 && c.col < fp.cols_per_tile;
}

int flat_index(const Floorplan& fp, const CoreId& c) {
    if (!is_valid_core(fp, c))
        throw DomainError("invalid core id (tile " + std::to_string(c.tile) + ", row " +
                          std::to_string(c.row) + ", col " + std::to_string(c.col) + ")");
    return c.tile * fp.cores_per_tile() + c.row * fp.cols_per_tile + c.col;
}

CoreId core_from_flat(const Floorplan& fp, int flat) {
    if (flat < 0 || flat >= fp.total_cores())
        throw DomainError("flat core index " + std::to_string(flat) + " out of range [0, " +
                          std::to_string(fp.total_cores()) + ")");
    const int per_tile = fp.cores_per_tile();
    CoreId c;
    c.tile = flat / per_tile;
    const int within = flat % per_tile;
    c.row = within / fp.cols_per_tile;
    c.col = within % fp.cols_per_tile;
    return c;
}

std::vector<CoreId> neighbors(const Floorplan& fp, const CoreId& c) {
    validate(fp);
    if (!is_valid_core(fp, c))
        throw DomainError("neighbors: invalid core id (tile " + std::to_string(c.tile) +
                          ", row " + std::to_string(c.row) + ", col " + std::to_string(c.col) +
                          ")");

    std::vector<CoreId> out;
    if (c.row > 0)
        out.push_back({c.tile, c.row - 1, c.col});
    if (c.row + 1 < fp.rows_per_tile)
        out.push_back({c.tile, c.row + 1, c.col});
    if (c.col > 0)
        out.push_back({c.tile, c.row, c.col - 1});
    else if (fp.inter_tile_coupled && c.tile > 0)
        out.push_back({c.tile - 1, c.row, fp.cols_per_tile - 1});
    if (c.col + 1 < fp.cols_per_tile)
        out.push_back({c.tile, c.row, c.col + 1});
    else if (fp.inter_tile_coupled && c.tile + 1 < fp.n_tiles)
        out.push_back({c.tile + 1, c.row, 0});

    std::sort(out.begin(), out.end(), [&fp](const CoreId& a, const CoreId& b) {
        return flat_index(fp, a) < flat_index(fp, b);
    });
    return out;
}

std::vector<int> neighbors_flat(const Floorplan& fp, int flat) {
    std::vector<int> out;
    for (const CoreId& n : neighbors(fp, core_from_flat(fp, flat)))
        out.push_back(flat_index(fp, n));
    return out;
}

bool crosses_tile_boundary(const CoreId& a, const CoreId& b) {
    return a.tile != b.tile;
}

} // namespace tpmon
