#include "tpmon/scenario.hpp"

#include "tpmon/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>

namespace tpmon {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ValidationError("scenario config: " + field + ": " + what);
}

const json& require(const json& j, const std::string& field, const char* context) {
    if (!j.contains(field))
        fail(std::string(context) + field, "missing");
    return j.at(field);
}

double get_number(const json& j, const std::string& field, const char* context) {
    const json& v = require(j, field, context);
    if (!v.is_number())
        fail(std::string(context) + field, "must be a number");
    return v.get<double>();
}

std::int64_t get_integer(const json& j, const std::string& field, const char* context) {
    const json& v = require(j, field, context);
    if (!v.is_number_integer())
        fail(std::string(context) + field, "must be an integer");
    return v.get<std::int64_t>();
}

Floorplan parse_floorplan(const json& j) {
    Floorplan fp;
    fp.n_tiles = static_cast<int>(get_integer(j, "n_tiles", "floorplan."));
    fp.rows_per_tile = static_cast<int>(get_integer(j, "rows_per_tile", "floorplan."));
    fp.cols_per_tile = static_cast<int>(get_integer(j, "cols_per_tile", "floorplan."));
    fp.inter_tile_coupled = j.value("inter_tile_coupled", false);
    validate(fp);
    return fp;
}

ThermalParams parse_params(const json& j) {
    ThermalParams p;
    p.g_amb = get_number(j, "g_amb", "thermal.params.");
    p.g_lat = get_number(j, "g_lat", "thermal.params.");
    p.g_tile = j.value("g_tile", 0.0);
    p.cap = get_number(j, "cap", "thermal.params.");
    p.t_amb = get_number(j, "t_amb", "thermal.params.");
    p.all_to_all_intra_tile = j.value("all_to_all_intra_tile", false);
    validate(p);
    return p;
}

CalibrationSpec parse_calibration(const json& j) {
    CalibrationSpec spec;
    const json& t = require(j, "targets", "thermal.calibration.");
    spec.targets.single_medium = get_number(t, "single_medium", "thermal.calibration.targets.");
    spec.targets.medium_high_neighbors =
        get_number(t, "medium_high_neighbors", "thermal.calibration.targets.");
    spec.targets.mixed_max = get_number(t, "mixed_max", "thermal.calibration.targets.");
    spec.targets.all_high = get_number(t, "all_high", "thermal.calibration.targets.");
    spec.targets.all_low = get_number(t, "all_low", "thermal.calibration.targets.");
    spec.g_amb_scale = j.value("g_amb_scale", 0.1);
    spec.tau_s = j.value("tau", 5e-3);
    return spec;
}

PowerLevels parse_levels(const json& j) {
    PowerLevels levels;
    levels.p_low = get_number(j, "low", "power_levels.");
    levels.p_med = get_number(j, "medium", "power_levels.");
    levels.p_high = get_number(j, "high", "power_levels.");
    levels.p_idle = j.value("idle", 0.0);
    validate(levels);
    return levels;
}

std::vector<PowerLevel> parse_level_array(const json& j, int n_cores, const std::string& field) {
    if (!j.is_array())
        fail(field, "must be an array of per-core levels");
    if (static_cast<int>(j.size()) != n_cores)
        fail(field, "expected " + std::to_string(n_cores) + " entries, got " +
                        std::to_string(j.size()));
    std::vector<PowerLevel> levels;
    for (const auto& v : j)
        levels.push_back(power_level_from_string(v.get<std::string>()));
    return levels;
}

TaskSet parse_tasks(const json& j, const Floorplan& fp) {
    TaskSet ts;
    if (!j.is_array())
        fail("tasks", "must be an array of {id, class} objects");
    for (const auto& t : j) {
        Task task;
        task.id = static_cast<int>(get_integer(t, "id", "tasks[]."));
        task.power_class = power_level_from_string(require(t, "class", "tasks[].").get<std::string>());
        ts.tasks.push_back(task);
    }
    validate(ts, fp);
    return ts;
}

ScenarioConfig load_scenario_impl(const json& j, const std::filesystem::path& base) {
    ScenarioConfig cfg;
    cfg.floorplan = parse_floorplan(require(j, "floorplan", ""));

    // Thermal parameters: explicit or calibrated, exactly one way.
    const json& thermal = require(j, "thermal", "");
    const bool has_params = thermal.contains("params");
    const bool has_calibration = thermal.contains("calibration");
    if (has_params == has_calibration)
        fail("thermal", "exactly one of 'params' or 'calibration' must be set");
    if (has_params) {
        cfg.params = parse_params(thermal.at("params"));
        if (j.contains("power_levels"))
            cfg.levels = parse_levels(j.at("power_levels"));
        else
            cfg.levels = PowerLevels{};
    } else {
        if (j.contains("power_levels"))
            fail("power_levels", "not allowed together with thermal.calibration (levels are "
                                 "derived)");
        cfg.calibration = parse_calibration(thermal.at("calibration"));
        const CalibrationResult cal =
            calibrate(cfg.calibration->targets, cfg.calibration->g_amb_scale,
                      cfg.calibration->tau_s);
        cfg.params = cal.params;
        cfg.levels = cal.levels;
    }

    if (j.contains("power_lut"))
        cfg.lut = load_power_lut(base / j.at("power_lut").get<std::string>());

    cfg.power_cfg.step_dt_s = j.value("step_dt", 1e-6);
    cfg.power_cfg.cycles_per_step = static_cast<int>(j.value("cycles_per_step", std::int64_t{0}));
    cfg.power_cfg.core_clock_hz = j.value("core_clock_hz", 4e8);
    if (cfg.power_cfg.cycles_per_step == 0)
        cfg.power_cfg.cycles_per_step =
            static_cast<int>(std::llround(cfg.power_cfg.step_dt_s * cfg.power_cfg.core_clock_hz));
    validate(cfg.power_cfg);

    cfg.duration_steps = j.value("duration_steps", std::int64_t{50000});
    if (cfg.duration_steps < 1)
        fail("duration_steps", "must be >= 1");
    cfg.readout_interval_steps = j.value("readout_interval_steps", std::int64_t{100});
    if (cfg.readout_interval_steps < 1)
        fail("readout_interval_steps", "must be >= 1");
    cfg.abstraction_window = static_cast<int>(j.value("abstraction_window", std::int64_t{10}));
    if (cfg.abstraction_window < 1)
        fail("abstraction_window", "must be >= 1");

    // Workload: exactly one of profile or trace.
    const json& workload = require(j, "workload", "");
    const bool has_profile = workload.contains("profile");
    const bool has_trace = workload.contains("trace");
    if (has_profile == has_trace)
        fail("workload", "exactly one of 'profile' or 'trace' must be set");
    const int n_cores = cfg.floorplan.total_cores();
    if (has_profile) {
        const json& profile = workload.at("profile");
        if (profile.contains("levels")) {
            cfg.profile.push_back({0, parse_level_array(profile.at("levels"), n_cores,
                                                        "workload.profile.levels")});
        } else if (profile.contains("schedule")) {
            for (const auto& seg : profile.at("schedule")) {
                ProfileSegment s;
                s.from_step = get_integer(seg, "from_step", "workload.profile.schedule[].");
                s.levels = parse_level_array(require(seg, "levels",
                                                     "workload.profile.schedule[]."),
                                             n_cores, "workload.profile.schedule[].levels");
                cfg.profile.push_back(std::move(s));
            }
            if (cfg.profile.empty())
                fail("workload.profile.schedule", "must not be empty");
            for (size_t i = 1; i < cfg.profile.size(); ++i)
                if (cfg.profile[i].from_step <= cfg.profile[i - 1].from_step)
                    fail("workload.profile.schedule", "from_step must be strictly increasing");
            if (cfg.profile.front().from_step != 0)
                fail("workload.profile.schedule", "first segment must start at step 0");
        } else {
            fail("workload.profile", "needs 'levels' or 'schedule'");
        }
    } else {
        cfg.trace_mode = true;
        cfg.trace_path = base / require(workload.at("trace"), "path", "workload.trace.")
                                    .get<std::string>();
        if (!cfg.lut)
            fail("power_lut", "required for trace workloads");
        cfg.trace = load_trace(cfg.trace_path, n_cores);
        if (static_cast<std::int64_t>(cfg.trace.size()) < cfg.duration_steps)
            fail("workload.trace",
                 "trace covers " + std::to_string(cfg.trace.size()) + " steps but duration is " +
                     std::to_string(cfg.duration_steps) + " (no silent zero-fill)");
    }

    if (j.contains("tasks"))
        cfg.tasks = parse_tasks(j.at("tasks"), cfg.floorplan);
    else {
        cfg.tasks = default_task_set();
        if (static_cast<int>(cfg.tasks.tasks.size()) > n_cores)
            cfg.tasks.tasks.clear();
    }

    cfg.initial_temp_c = j.value("initial_temp", cfg.params.t_amb);

    // The stability guard is part of config validation: a scenario that
    // cannot be integrated is rejected at load.
    const ThermalNetwork net = build_network(cfg.floorplan, cfg.params);
    const double limit = stability_limit(net);
    if (cfg.power_cfg.step_dt_s > limit)
        fail("step_dt", format_fixed(cfg.power_cfg.step_dt_s * 1e6) +
                            " us exceeds the stability limit " + format_fixed(limit * 1e6) +
                            " us");
    return cfg;
}

} // namespace

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open scenario file '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("scenario '" + path.string() + "': " + e.what());
    }
    const std::filesystem::path base = path.has_parent_path()
                                           ? path.parent_path()
                                           : std::filesystem::path(".");
    try {
        return load_scenario_impl(j, base);
    } catch (const json::exception& e) {
        throw ValidationError("scenario '" + path.string() + "': " + e.what());
    }
}

std::vector<double> workload_power(const ScenarioConfig& cfg, std::int64_t step) {
    const int n_cores = cfg.floorplan.total_cores();
    std::vector<double> power(static_cast<size_t>(n_cores), 0.0);
    if (cfg.trace_mode) {
        if (step >= static_cast<std::int64_t>(cfg.trace.size()))
            throw ValidationError("trace exhausted at step " + std::to_string(step));
        for (int c = 0; c < n_cores; ++c)
            power[static_cast<size_t>(c)] =
                accumulate_step(cfg.lut.value(), cfg.trace[static_cast<size_t>(step)]
                                                     .per_core[static_cast<size_t>(c)],
                                cfg.power_cfg)
                    .power_w;
    } else {
        const ProfileSegment* active = &cfg.profile.front();
        for (const ProfileSegment& seg : cfg.profile)
            if (seg.from_step <= step)
                active = &seg;
        for (int c = 0; c < n_cores; ++c)
            power[static_cast<size_t>(c)] =
                profile_power(active->levels[static_cast<size_t>(c)], cfg.levels);
    }
    return power;
}

std::vector<double> workload_mean_power(const ScenarioConfig& cfg) {
    const int n_cores = cfg.floorplan.total_cores();
    if (!cfg.trace_mode && cfg.profile.size() == 1)
        return workload_power(cfg, 0);

    std::vector<double> mean(static_cast<size_t>(n_cores), 0.0);
    for (std::int64_t s = 0; s < cfg.duration_steps; ++s) {
        const std::vector<double> p = workload_power(cfg, s);
        for (int c = 0; c < n_cores; ++c)
            mean[static_cast<size_t>(c)] += p[static_cast<size_t>(c)];
    }
    for (double& v : mean)
        v /= static_cast<double>(cfg.duration_steps);
    return mean;
}

SimOutput run_simulation(const ScenarioConfig& cfg) {
    const Floorplan& fp = cfg.floorplan;
    const ThermalNetwork net = build_network(fp, cfg.params);
    const int n_cores = fp.total_cores();

    std::vector<TpmonState> monitors;
    const size_t history_capacity =
        static_cast<size_t>(std::max(cfg.abstraction_window, 32));
    for (int t = 0; t < fp.n_tiles; ++t)
        monitors.push_back(make_tpmon(fp, t, cfg.initial_temp_c, cfg.power_cfg.step_dt_s,
                                      history_capacity));

    SimOutput out;
    out.step_dt_s = cfg.power_cfg.step_dt_s;
    out.rows.reserve(static_cast<size_t>(cfg.duration_steps) * static_cast<size_t>(n_cores));
    out.summary.total_energy_nj.assign(static_cast<size_t>(n_cores), 0.0);

    std::vector<double> temps(static_cast<size_t>(n_cores), cfg.initial_temp_c);
    const double step_us = cfg.power_cfg.step_dt_s * 1e6;

    for (std::int64_t step = 0; step < cfg.duration_steps; ++step) {
        const std::vector<double> power = workload_power(cfg, step);
        tick_monitors(monitors, net, temps, power, cfg.power_cfg);

        for (int c = 0; c < n_cores; ++c) {
            SeriesRow row;
            row.step = step;
            row.time_us = static_cast<double>(step + 1) * step_us;
            row.core = c;
            row.power_w = power[static_cast<size_t>(c)];
            row.temp_c = temps[static_cast<size_t>(c)];
            out.rows.push_back(row);
            out.summary.total_energy_nj[static_cast<size_t>(c)] +=
                power[static_cast<size_t>(c)] * cfg.power_cfg.step_dt_s * 1e9;
        }

        if ((step + 1) % cfg.readout_interval_steps == 0) {
            for (TpmonState& st : monitors) {
                ReadoutEvent ev;
                ev.step = step + 1;
                ev.local = readout_local(st);
                ev.abstracted = readout_abstract(st, cfg.abstraction_window);
                out.readouts.push_back(std::move(ev));
            }
        }
    }

    out.summary.final_temp_c = temps;
    out.summary.global_max_temp_c = *std::max_element(temps.begin(), temps.end());
    const int per_tile = fp.cores_per_tile();
    for (int t = 0; t < fp.n_tiles; ++t) {
        const auto begin = temps.begin() + static_cast<long>(t) * per_tile;
        const auto [lo, hi] = std::minmax_element(begin, begin + per_tile);
        out.summary.tile_max_temp_c.push_back(*hi);
        out.summary.tile_spread_c.push_back(*hi - *lo);
    }
    return out;
}

std::string format_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot open output file '" + path.string() + "'");
    return out;
}

} // namespace

void emit_csv(const SimOutput& out, const std::filesystem::path& path) {
    std::ofstream os = open_out(path);
    os << "step,time_us,core,power_w,temp_c\n";
    char buf[160];
    for (const SeriesRow& r : out.rows) {
        std::snprintf(buf, sizeof(buf), "%lld,%.6f,%d,%.6f,%.6f\n",
                      static_cast<long long>(r.step), r.time_us, r.core, r.power_w, r.temp_c);
        os << buf;
    }
    if (!os)
        throw ValidationError("write failed for '" + path.string() + "'");
}

void emit_readout_csv(const SimOutput& out, const std::filesystem::path& path) {
    std::ofstream os = open_out(path);
    os << "step,tile,core,energy_nj,mean_power_w,temp_c\n";
    char buf[200];
    for (const ReadoutEvent& ev : out.readouts) {
        for (size_t c = 0; c < ev.local.energy_nj.size(); ++c) {
            std::snprintf(buf, sizeof(buf), "%lld,%d,%zu,%.6f,%.6f,%.6f\n",
                          static_cast<long long>(ev.step), ev.local.tile, c,
                          ev.local.energy_nj[c], ev.local.mean_power_w[c], ev.local.temp_c[c]);
            os << buf;
        }
    }
    if (!os)
        throw ValidationError("write failed for '" + path.string() + "'");
}

void emit_abstract_csv(const SimOutput& out, const std::filesystem::path& path) {
    std::ofstream os = open_out(path);
    os << "step,tile,max_temp_c,mean_tile_power_w,window_readouts\n";
    char buf[160];
    for (const ReadoutEvent& ev : out.readouts) {
        std::snprintf(buf, sizeof(buf), "%lld,%d,%.6f,%.6f,%d\n",
                      static_cast<long long>(ev.step), ev.abstracted.tile,
                      ev.abstracted.max_temp_c, ev.abstracted.mean_tile_power_w,
                      ev.abstracted.window_readouts);
        os << buf;
    }
    if (!os)
        throw ValidationError("write failed for '" + path.string() + "'");
}

} // namespace tpmon
