#ifndef TPMON_TOPOLOGY_HPP
#define TPMON_TOPOLOGY_HPP

#include <vector>

namespace tpmon {

// MPSoC floorplan: n_tiles tiles, each a rows x cols core grid. Tiles are
// laid out in a single row, so optional inter-tile adjacency joins the last
// column of tile t to the first column of tile t+1.
struct Floorplan {
    int n_tiles = 2;
    int rows_per_tile = 2;
    int cols_per_tile = 2;
    bool inter_tile_coupled = false;

    int cores_per_tile() const { return rows_per_tile * cols_per_tile; }
    int total_cores() const { return n_tiles * cores_per_tile(); }
};

// Throws DomainError unless n_tiles, rows_per_tile, cols_per_tile >= 1.
void validate(const Floorplan& fp);

struct CoreId {
    int tile = 0;
    int row = 0;
    int col = 0;

    friend bool operator==(const CoreId&, const CoreId&) = default;
};

bool is_valid_core(const Floorplan& fp, const CoreId& c);

// Flat index = tile * (rows * cols) + row * cols + col; a bijection onto
// 0 .. total_cores - 1.
int flat_index(const Floorplan& fp, const CoreId& c);
CoreId core_from_flat(const Floorplan& fp, int flat);

// Grid 4-adjacency within the tile; cores across a tile boundary are
// included when inter_tile_coupled is set. Result is sorted by ascending
// flat index.
std::vector<CoreId> neighbors(const Floorplan& fp, const CoreId& c);
std::vector<int> neighbors_flat(const Floorplan& fp, int flat);

// True when a and b sit in different tiles (only possible with
// inter_tile_coupled).
bool crosses_tile_boundary(const CoreId& a, const CoreId& b);

} // namespace tpmon

#endif
