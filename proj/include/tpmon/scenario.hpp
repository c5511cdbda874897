#ifndef TPMON_SCENARIO_HPP
#define TPMON_SCENARIO_HPP

#include "tpmon/alloc.hpp"
#include "tpmon/monitor.hpp"
#include "tpmon/power.hpp"
#include "tpmon/thermal.hpp"
#include "tpmon/topology.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tpmon {

// One piece of a profile workload: per-core power levels holding from
// from_step until the next segment takes over.
struct ProfileSegment {
    std::int64_t from_step = 0;
    std::vector<PowerLevel> levels; // one per core, flat index order
};

struct CalibrationSpec {
    CalibrationTargets targets;
    double g_amb_scale = 0.1;
    double tau_s = 5e-3;
};

// Fully validated scenario: floorplan, thermal parameters (given directly or
// derived from calibration targets at load time), power levels, workload and
// monitor cadence.
struct ScenarioConfig {
    Floorplan floorplan;
    ThermalParams params;
    PowerLevels levels;
    std::optional<CalibrationSpec> calibration; // recorded when params came from it
    std::optional<PowerLut> lut;

    bool trace_mode = false;
    std::vector<ProfileSegment> profile;  // profile mode
    std::vector<TraceStep> trace;         // trace mode
    std::filesystem::path trace_path;

    TaskSet tasks; // for the allocate command; eight-task default when absent

    PowerConfig power_cfg;
    std::int64_t duration_steps = 50000;
    std::int64_t readout_interval_steps = 100;
    int abstraction_window = 10;
    double initial_temp_c = 0.0; // defaults to t_amb at load
};

// Parses, resolves relative paths against the config file directory, runs
// calibration when requested and validates everything (including the
// step-size stability guard). Errors name the offending field.
ScenarioConfig load_scenario(const std::filesystem::path& path);

// Per-core power during one step of the configured workload.
std::vector<double> workload_power(const ScenarioConfig& cfg, std::int64_t step);

// Average per-core power over the configured duration; equals the constant
// power for single-segment profiles.
std::vector<double> workload_mean_power(const ScenarioConfig& cfg);

struct SeriesRow {
    std::int64_t step = 0;
    double time_us = 0.0; // simulated time at the end of the step
    int core = 0;
    double power_w = 0.0;
    double temp_c = 0.0; // after the step
};

struct ReadoutEvent {
    std::int64_t step = 0; // 1-based step count at which the readout fired
    TileReadout local;
    AbstractReadout abstracted;
};

struct SimSummary {
    std::vector<double> final_temp_c;     // per core
    std::vector<double> tile_max_temp_c;  // per tile
    std::vector<double> tile_spread_c;    // per tile
    double global_max_temp_c = 0.0;
    std::vector<double> total_energy_nj;  // per core over the whole run
};

struct SimOutput {
    double step_dt_s = 1e-6;
    std::vector<SeriesRow> rows; // ordered by (step, core)
    std::vector<ReadoutEvent> readouts;
    SimSummary summary;
};

// Steps the full network once per step, ticks every tile monitor in
// ascending tile order, and fires local + abstract readouts every
// readout_interval_steps. Deterministic end to end.
SimOutput run_simulation(const ScenarioConfig& cfg);

// Series CSV: header step,time_us,core,power_w,temp_c; reals with exactly
// six decimals, '\n' line ends, byte-identical across runs.
void emit_csv(const SimOutput& out, const std::filesystem::path& path);

// Local readouts, one row per (readout, core):
// step,tile,core,energy_nj,mean_power_w,temp_c.
void emit_readout_csv(const SimOutput& out, const std::filesystem::path& path);

// Abstract readouts, one row per (readout, tile):
// step,tile,max_temp_c,mean_tile_power_w,window_readouts.
void emit_abstract_csv(const SimOutput& out, const std::filesystem::path& path);

// Fixed six-decimal rendering used by every emitter and report.
std::string format_fixed(double v);

} // namespace tpmon

#endif
