#ifndef TPMON_MONITOR_HPP
#define TPMON_MONITOR_HPP

#include "tpmon/power.hpp"
#include "tpmon/thermal.hpp"
#include "tpmon/topology.hpp"

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

namespace tpmon {

// One local readout: read-and-clear energy accumulators plus the current
// per-core temperatures of the tile.
struct TileReadout {
    int tile = 0;
    std::vector<double> energy_nj;     // accumulated since the previous readout
    std::vector<double> mean_power_w;  // energy / covered time
    std::vector<double> temp_c;
    std::uint64_t steps_covered = 0;
    std::uint64_t step_count = 0;      // monitor step counter at readout time
};

// Windowed summary handed to the run-time support system for inter-tile
// decisions.
struct AbstractReadout {
    int tile = 0;
    double max_temp_c = 0.0;       // max per-core temperature over the window
    double mean_tile_power_w = 0.0; // energy-weighted mean of the tile total
    int window_readouts = 0;       // readouts actually covered
};

// Per-tile monitor state: one energy accumulator per core, the tile view of
// the temperature vector, and a ring of recent readouts for abstraction.
struct TpmonState {
    int tile = 0;
    double step_dt_s = 1e-6;
    std::vector<double> energy_acc_nj; // cleared only by readout_local
    std::vector<double> last_power_w;
    std::vector<double> temps_c;
    std::uint64_t step_count = 0;
    std::uint64_t last_readout_step = 0;
    std::deque<TileReadout> history;
    size_t history_capacity = 32;
};

TpmonState make_tpmon(const Floorplan& fp, int tile, double initial_temp_c, double step_dt_s,
                      size_t history_capacity = 32);

// One monitor step for one tile: accumulate P*dt per core and adopt the
// tile's view of the freshly stepped global temperatures.
void tpmon_tick(TpmonState& state, std::span<const double> tile_power_w,
                std::span<const double> tile_temps_c, const PowerConfig& cfg);

// Advances the full network one transient step and ticks every tile monitor
// in ascending tile order. global_temps is updated in place.
void tick_monitors(std::vector<TpmonState>& states, const ThermalNetwork& net,
                   std::vector<double>& global_temps, const std::vector<double>& global_power_w,
                   const PowerConfig& cfg);

// Emits the interval readout and clears the energy accumulators. Errors when
// no tick happened since the previous readout (covered time would be zero).
TileReadout readout_local(TpmonState& state);

// Over the most recent min(window, available) readouts: max of all per-core
// temperatures and the energy-weighted mean tile power. Pure observation.
AbstractReadout readout_abstract(const TpmonState& state, int window);

} // namespace tpmon

#endif
