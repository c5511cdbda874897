#include "tpmon/monitor.hpp"

#include "tpmon/errors.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace tpmon {

TpmonState make_tpmon(const Floorplan& fp, int tile, double initial_temp_c, double step_dt_s,
                      size_t history_capacity) {
    validate(fp);
    if (tile < 0 || tile >= fp.n_tiles)
        throw DomainError("monitor: tile " + std::to_string(tile) + " out of range for " +
                          std::to_string(fp.n_tiles) + " tiles");
    if (!(step_dt_s > 0.0))
        throw DomainError("monitor: step_dt must be > 0");
    if (history_capacity < 1)
        throw DomainError("monitor: history capacity must be >= 1");

    TpmonState st;
    st.tile = tile;
    st.step_dt_s = step_dt_s;
    const size_t n = static_cast<size_t>(fp.cores_per_tile());
    st.energy_acc_nj.assign(n, 0.0);
    st.last_power_w.assign(n, 0.0);
    st.temps_c.assign(n, initial_temp_c);
    st.history_capacity = history_capacity;
    return st;
}

void tpmon_tick(TpmonState& state, std::span<const double> tile_power_w,
                std::span<const double> tile_temps_c, const PowerConfig& cfg) {
    const size_t n = state.energy_acc_nj.size();
    if (tile_power_w.size() != n)
        throw DomainError("monitor tick: power vector has " +
                          std::to_string(tile_power_w.size()) + " entries, tile has " +
                          std::to_string(n) + " cores");
    if (tile_temps_c.size() != n)
        throw DomainError("monitor tick: temperature vector has " +
                          std::to_string(tile_temps_c.size()) + " entries, tile has " +
                          std::to_string(n) + " cores");
    if (cfg.step_dt_s != state.step_dt_s)
        throw DomainError("monitor tick: step_dt changed mid-run");

    for (size_t c = 0; c < n; ++c) {
        state.energy_acc_nj[c] += tile_power_w[c] * state.step_dt_s * 1e9;
        state.last_power_w[c] = tile_power_w[c];
        state.temps_c[c] = tile_temps_c[c];
    }
    state.step_count += 1;
}

void tick_monitors(std::vector<TpmonState>& states, const ThermalNetwork& net,
                   std::vector<double>& global_temps, const std::vector<double>& global_power_w,
                   const PowerConfig& cfg) {
    const Floorplan& fp = net.floorplan;
    if (static_cast<int>(states.size()) != fp.n_tiles)
        throw DomainError("tick: expected one monitor per tile");

    global_temps = transient_step(net, global_temps, global_power_w, cfg.step_dt_s);

    const size_t per_tile = static_cast<size_t>(fp.cores_per_tile());
    for (int t = 0; t < fp.n_tiles; ++t) {
        const size_t base = static_cast<size_t>(t) * per_tile;
        tpmon_tick(states[static_cast<size_t>(t)],
                   std::span<const double>(global_power_w.data() + base, per_tile),
                   std::span<const double>(global_temps.data() + base, per_tile), cfg);
    }
}

TileReadout readout_local(TpmonState& state) {
    const std::uint64_t span = state.step_count - state.last_readout_step;
    if (span == 0)
        throw DomainError("readout: no tick since the previous readout (mean power undefined)");

    TileReadout r;
    r.tile = state.tile;
    r.energy_nj = state.energy_acc_nj;
    r.temp_c = state.temps_c;
    r.steps_covered = span;
    r.step_count = state.step_count;
    const double covered_s = static_cast<double>(span) * state.step_dt_s;
    r.mean_power_w.resize(r.energy_nj.size());
    for (size_t c = 0; c < r.energy_nj.size(); ++c)
        r.mean_power_w[c] = r.energy_nj[c] * 1e-9 / covered_s;

    std::fill(state.energy_acc_nj.begin(), state.energy_acc_nj.end(), 0.0);
    state.last_readout_step = state.step_count;
    state.history.push_back(r);
    while (state.history.size() > state.history_capacity)
        state.history.pop_front();
    return r;
}

AbstractReadout readout_abstract(const TpmonState& state, int window) {
    if (window < 1)
        throw DomainError("abstract readout: window must be >= 1");
    if (state.history.empty())
        throw DomainError("abstract readout: no local readout available yet");

    const size_t use = std::min(static_cast<size_t>(window), state.history.size());
    AbstractReadout out;
    out.tile = state.tile;
    out.window_readouts = static_cast<int>(use);
    out.max_temp_c = -std::numeric_limits<double>::infinity();
    double total_energy_nj = 0.0;
    double total_time_s = 0.0;
    for (size_t k = state.history.size() - use; k < state.history.size(); ++k) {
        const TileReadout& r = state.history[k];
        for (double t : r.temp_c)
            out.max_temp_c = std::max(out.max_temp_c, t);
        for (double e : r.energy_nj)
            total_energy_nj += e;
        total_time_s += static_cast<double>(r.steps_covered) * state.step_dt_s;
    }
    out.mean_tile_power_w = total_energy_nj * 1e-9 / total_time_s;
    return out;
}

} // namespace tpmon
