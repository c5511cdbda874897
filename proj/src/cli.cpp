#include "tpmon/cli.hpp"

#include "tpmon/errors.hpp"
#include "tpmon/scenario.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace tpmon {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

const std::array<const char*, 5> kTargetNames = {"single_medium", "medium_high_neighbors",
                                                 "mixed_max", "all_high", "all_low"};

void print_summary(const SimOutput& out, const ScenarioConfig& cfg, std::ostream& os) {
    os << "steps: " << cfg.duration_steps << "\n";
    os << "step_dt_us: " << format_fixed(cfg.power_cfg.step_dt_s * 1e6) << "\n";
    for (size_t c = 0; c < out.summary.final_temp_c.size(); ++c)
        os << "core " << c << ": temp_c=" << format_fixed(out.summary.final_temp_c[c])
           << " energy_nj=" << format_fixed(out.summary.total_energy_nj[c]) << "\n";
    for (size_t t = 0; t < out.summary.tile_max_temp_c.size(); ++t)
        os << "tile " << t << ": max_temp_c=" << format_fixed(out.summary.tile_max_temp_c[t])
           << " spread_c=" << format_fixed(out.summary.tile_spread_c[t]) << "\n";
    os << "global_max_temp_c: " << format_fixed(out.summary.global_max_temp_c) << "\n";
}

int run_simulate(const std::string& scenario_path, const std::string& out_path,
                 const std::string& readout_path, const std::string& abstract_path,
                 std::int64_t steps_override) {
    ScenarioConfig cfg = load_scenario(scenario_path);
    if (steps_override > 0) {
        cfg.duration_steps = steps_override;
        if (cfg.trace_mode && static_cast<std::int64_t>(cfg.trace.size()) < cfg.duration_steps)
            throw ValidationError("trace covers " + std::to_string(cfg.trace.size()) +
                                  " steps but --steps asked for " +
                                  std::to_string(cfg.duration_steps));
    }
    const SimOutput out = run_simulation(cfg);
    emit_csv(out, out_path);
    if (!readout_path.empty())
        emit_readout_csv(out, readout_path);
    if (!abstract_path.empty())
        emit_abstract_csv(out, abstract_path);
    print_summary(out, cfg, std::cout);
    return kExitOk;
}

int run_steady(const std::string& scenario_path) {
    const ScenarioConfig cfg = load_scenario(scenario_path);
    const ThermalNetwork net = build_network(cfg.floorplan, cfg.params);
    const std::vector<double> power = workload_mean_power(cfg);
    const std::vector<double> temps = steady_state(net, power);
    for (size_t c = 0; c < temps.size(); ++c)
        std::cout << "core " << c << ": power_w=" << format_fixed(power[c])
                  << " temp_c=" << format_fixed(temps[c]) << "\n";
    std::cout << "global_max_temp_c: "
              << format_fixed(*std::max_element(temps.begin(), temps.end())) << "\n";
    return kExitOk;
}

CalibrationTargets load_targets(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open targets file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("targets '" + path + "': " + e.what());
    }
    CalibrationTargets t;
    try {
        t.single_medium = j.at("single_medium").get<double>();
        t.medium_high_neighbors = j.at("medium_high_neighbors").get<double>();
        t.mixed_max = j.at("mixed_max").get<double>();
        t.all_high = j.at("all_high").get<double>();
        t.all_low = j.at("all_low").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("targets '" + path + "': " + e.what());
    }
    return t;
}

void print_residuals(const std::vector<double>& residuals, std::ostream& os) {
    for (size_t i = 0; i < kTargetNames.size(); ++i) {
        os << "residual " << kTargetNames[i] << ": ";
        if (i < residuals.size())
            os << format_fixed(residuals[i]) << "\n";
        else
            os << "n/a\n"; // targets rejected before a candidate fit existed
    }
}

int run_calibrate(const std::string& targets_path, double g_amb, double tau,
                  const std::string& out_path) {
    const CalibrationTargets targets = load_targets(targets_path);
    const CalibrationResult result = calibrate(targets, g_amb, tau);

    std::cout << "t_amb_c: " << format_fixed(result.params.t_amb) << "\n";
    std::cout << "g_amb_w_per_c: " << format_fixed(result.params.g_amb) << "\n";
    std::cout << "g_lat_w_per_c: " << format_fixed(result.params.g_lat) << "\n";
    std::cout << "cap_j_per_c: " << format_fixed(result.params.cap) << "\n";
    std::cout << "p_low_w: " << format_fixed(result.levels.p_low) << "\n";
    std::cout << "p_med_w: " << format_fixed(result.levels.p_med) << "\n";
    std::cout << "p_high_w: " << format_fixed(result.levels.p_high) << "\n";
    print_residuals(result.residuals, std::cout);

    if (!out_path.empty()) {
        nlohmann::json out = {
            {"params",
             {{"g_amb", result.params.g_amb},
              {"g_lat", result.params.g_lat},
              {"g_tile", result.params.g_tile},
              {"cap", result.params.cap},
              {"t_amb", result.params.t_amb}}},
            {"power_levels",
             {{"low", result.levels.p_low},
              {"medium", result.levels.p_med},
              {"high", result.levels.p_high},
              {"idle", result.levels.p_idle}}},
        };
        std::ofstream os(out_path, std::ios::binary);
        if (!os)
            throw ValidationError("cannot open output file '" + out_path + "'");
        os << out.dump(2) << "\n";
    }
    return kExitOk;
}

int run_allocate(const std::string& scenario_path, const std::string& target_name,
                 const std::string& method) {
    const ScenarioConfig cfg = load_scenario(scenario_path);
    if (cfg.tasks.tasks.empty())
        throw ValidationError("scenario defines no tasks to allocate");

    const ControlTarget target = target_name == "min-max-temp"
                                     ? ControlTarget::MinGlobalMaxTemp
                                     : ControlTarget::MinIntraTileSpread;
    const ThermalNetwork net = build_network(cfg.floorplan, cfg.params);
    const auto [mapping, score] = method == "greedy"
                                      ? greedy_allocate(cfg.tasks, net, cfg.levels, target)
                                      : exhaustive_allocate(cfg.tasks, net, cfg.levels, target);

    std::cout << "target: " << to_string(target) << "\n";
    std::cout << "method: " << method << "\n";
    for (const auto& [task, core] : mapping.task_to_core) {
        const CoreId id = core_from_flat(cfg.floorplan, core);
        std::cout << "task " << task << " -> core " << core << " (tile " << id.tile << ", row "
                  << id.row << ", col " << id.col << ")\n";
    }
    for (size_t c = 0; c < score.temps_c.size(); ++c)
        std::cout << "core " << c << ": temp_c=" << format_fixed(score.temps_c[c]) << "\n";
    for (size_t t = 0; t < score.tile_spread_c.size(); ++t)
        std::cout << "tile " << t << ": spread_c=" << format_fixed(score.tile_spread_c[t])
                  << "\n";
    std::cout << "global_max_temp_c: " << format_fixed(score.global_max_c) << "\n";
    std::cout << "objective: " << format_fixed(score.objective) << "\n";
    return kExitOk;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Tile-level temperature and power monitor emulation"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_path;
    std::string readout_path;
    std::string abstract_path;
    std::int64_t steps_override = 0;

    CLI::App* simulate = app.add_subcommand("simulate", "Run a scenario and emit the series CSV");
    simulate->add_option("--scenario", scenario_path, "Scenario config (JSON)")->required();
    simulate->add_option("--out", out_path, "Series CSV output path")->required();
    simulate->add_option("--readouts", readout_path, "Optional local-readout CSV path");
    simulate->add_option("--abstract", abstract_path, "Optional abstract-readout CSV path");
    simulate->add_option("--steps", steps_override, "Override duration_steps");

    CLI::App* steady = app.add_subcommand("steady", "Steady-state temperatures of the workload");
    steady->add_option("--scenario", scenario_path, "Scenario config (JSON)")->required();

    std::string targets_path;
    std::string params_out;
    double g_amb = 0.1;
    double tau = 5e-3;
    CLI::App* calibrate_cmd = app.add_subcommand("calibrate", "Fit parameters to targets");
    calibrate_cmd->add_option("--targets", targets_path, "Targets file (JSON)")->required();
    calibrate_cmd->add_option("--g-amb", g_amb, "Ambient conductance scale, W/degC");
    calibrate_cmd->add_option("--tau", tau, "Thermal time constant, s");
    calibrate_cmd->add_option("--out", params_out, "Write fitted parameters (JSON)");

    std::string target_name = "min-max-temp";
    std::string method = "exhaustive";
    CLI::App* allocate = app.add_subcommand("allocate", "Map the scenario tasks onto cores");
    allocate->add_option("--scenario", scenario_path, "Scenario config (JSON)")->required();
    allocate->add_option("--target", target_name, "Control target")
        ->check(CLI::IsMember({"min-max-temp", "min-spread"}))
        ->required();
    allocate->add_option("--method", method, "Search method")
        ->check(CLI::IsMember({"exhaustive", "greedy"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            std::cout << app.help() << std::flush;
            return kExitOk;
        }
        std::cerr << e.what() << "\n" << app.help() << std::flush;
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(simulate))
            return run_simulate(scenario_path, out_path, readout_path, abstract_path,
                                steps_override);
        if (app.got_subcommand(steady))
            return run_steady(scenario_path);
        if (app.got_subcommand(calibrate_cmd))
            return run_calibrate(targets_path, g_amb, tau, params_out);
        if (app.got_subcommand(allocate))
            return run_allocate(scenario_path, target_name, method);
        std::cerr << app.help() << std::flush;
        return kExitUsage;
    } catch (const CalibrationError& e) {
        std::cerr << "calibration failed: " << e.what() << "\n";
        print_residuals(e.residuals(), std::cerr);
        return kExitNumerical;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace tpmon
