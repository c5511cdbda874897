#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tpmon/alloc.hpp"
#include "tpmon/errors.hpp"
#include "tpmon/monitor.hpp"
#include "tpmon/power.hpp"
#include "tpmon/scenario.hpp"
#include "tpmon/thermal.hpp"
#include "tpmon/topology.hpp"

namespace py = pybind11;
using namespace tpmon;

PYBIND11_MODULE(_tpmon, m) {
    m.doc() = "Tile-level temperature and power monitor emulation";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<CalibrationError>(m, "CalibrationError", PyExc_RuntimeError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    py::class_<Floorplan>(m, "Floorplan")
        .def(py::init([](int n_tiles, int rows_per_tile, int cols_per_tile,
                         bool inter_tile_coupled) {
                 Floorplan fp{n_tiles, rows_per_tile, cols_per_tile, inter_tile_coupled};
                 validate(fp);
                 return fp;
             }),
             py::arg("n_tiles") = 2, py::arg("rows_per_tile") = 2, py::arg("cols_per_tile") = 2,
             py::arg("inter_tile_coupled") = false)
        .def_readonly("n_tiles", &Floorplan::n_tiles)
        .def_readonly("rows_per_tile", &Floorplan::rows_per_tile)
        .def_readonly("cols_per_tile", &Floorplan::cols_per_tile)
        .def_readonly("inter_tile_coupled", &Floorplan::inter_tile_coupled)
        .def("total_cores", &Floorplan::total_cores)
        .def("cores_per_tile", &Floorplan::cores_per_tile);

    py::class_<CoreId>(m, "CoreId")
        .def(py::init<int, int, int>(), py::arg("tile"), py::arg("row"), py::arg("col"))
        .def_readonly("tile", &CoreId::tile)
        .def_readonly("row", &CoreId::row)
        .def_readonly("col", &CoreId::col)
        .def("__repr__", [](const CoreId& c) {
            return "CoreId(tile=" + std::to_string(c.tile) + ", row=" + std::to_string(c.row) +
                   ", col=" + std::to_string(c.col) + ")";
        });

    m.def("flat_index", &flat_index, py::arg("floorplan"), py::arg("core"));
    m.def("core_from_flat", &core_from_flat, py::arg("floorplan"), py::arg("flat"));
    m.def("neighbors", &neighbors, py::arg("floorplan"), py::arg("core"));
    m.def("neighbors_flat", &neighbors_flat, py::arg("floorplan"), py::arg("flat"));

    py::class_<ThermalParams>(m, "ThermalParams")
        .def(py::init([](double g_amb, double g_lat, double g_tile, double cap, double t_amb,
                         bool all_to_all_intra_tile) {
                 ThermalParams p{g_amb, g_lat, g_tile, cap, t_amb, all_to_all_intra_tile};
                 validate(p);
                 return p;
             }),
             py::arg("g_amb") = 0.1, py::arg("g_lat") = 0.15, py::arg("g_tile") = 0.0,
             py::arg("cap") = 5e-4, py::arg("t_amb") = 45.0,
             py::arg("all_to_all_intra_tile") = false)
        .def_readonly("g_amb", &ThermalParams::g_amb)
        .def_readonly("g_lat", &ThermalParams::g_lat)
        .def_readonly("g_tile", &ThermalParams::g_tile)
        .def_readonly("cap", &ThermalParams::cap)
        .def_readonly("t_amb", &ThermalParams::t_amb);

    py::class_<ThermalNetwork>(m, "ThermalNetwork")
        .def_readonly("n", &ThermalNetwork::n)
        .def_readonly("t_amb", &ThermalNetwork::t_amb)
        .def("conductance", &ThermalNetwork::at, py::arg("i"), py::arg("j"));

    m.def("build_network", &build_network, py::arg("floorplan"), py::arg("params"));
    m.def("steady_state", &steady_state, py::arg("network"), py::arg("power_w"));
    m.def("transient_step", &transient_step, py::arg("network"), py::arg("temps_c"),
          py::arg("power_w"), py::arg("dt_s"));
    m.def("stability_limit", &stability_limit, py::arg("network"));

    py::class_<PowerLevels>(m, "PowerLevels")
        .def(py::init([](double low, double medium, double high, double idle) {
                 PowerLevels l{low, medium, high, idle};
                 validate(l);
                 return l;
             }),
             py::arg("low"), py::arg("medium"), py::arg("high"), py::arg("idle") = 0.0)
        .def_readonly("low", &PowerLevels::p_low)
        .def_readonly("medium", &PowerLevels::p_med)
        .def_readonly("high", &PowerLevels::p_high)
        .def_readonly("idle", &PowerLevels::p_idle);

    py::class_<CalibrationTargets>(m, "CalibrationTargets")
        .def(py::init([](double single_medium, double medium_high_neighbors, double mixed_max,
                         double all_high, double all_low) {
                 return CalibrationTargets{single_medium, medium_high_neighbors, mixed_max,
                                           all_high, all_low};
             }),
             py::arg("single_medium") = 47.0, py::arg("medium_high_neighbors") = 53.0,
             py::arg("mixed_max") = 51.0, py::arg("all_high") = 54.0, py::arg("all_low") = 47.0);

    py::class_<CalibrationResult>(m, "CalibrationResult")
        .def_readonly("params", &CalibrationResult::params)
        .def_readonly("levels", &CalibrationResult::levels)
        .def_readonly("residuals", &CalibrationResult::residuals);

    m.def("calibrate", &calibrate, py::arg("targets"), py::arg("g_amb_scale") = 0.1,
          py::arg("tau_s") = 5e-3);

    py::enum_<InstructionClass>(m, "InstructionClass")
        .value("ld", InstructionClass::Ld)
        .value("st", InstructionClass::St)
        .value("alu", InstructionClass::Alu)
        .value("branch", InstructionClass::Branch)
        .value("mul", InstructionClass::Mul)
        .value("div", InstructionClass::Div)
        .value("fpu", InstructionClass::Fpu)
        .value("nop", InstructionClass::Nop);

    py::class_<PowerLut>(m, "PowerLut")
        .def(py::init([](const std::array<double, kInstructionClassCount>& energies_nj,
                         double static_power_w, double quantum_nj) {
                 return make_power_lut(energies_nj, static_power_w, quantum_nj);
             }),
             py::arg("energies_nj"), py::arg("static_power_w") = 0.0, py::arg("quantum_nj") = 0.0)
        .def_readonly("static_power_w", &PowerLut::static_power_w)
        .def_readonly("quantum_nj", &PowerLut::quantum_nj)
        .def("lookup", &lut_lookup, py::arg("instruction_class"));

    m.def("scale_lut", &scale_lut, py::arg("lut"), py::arg("k"));
    m.def("load_power_lut", &load_power_lut, py::arg("path"));

    py::class_<PowerConfig>(m, "PowerConfig")
        .def(py::init([](double step_dt_s, int cycles_per_step, double core_clock_hz) {
                 PowerConfig cfg{step_dt_s, cycles_per_step, core_clock_hz};
                 validate(cfg);
                 return cfg;
             }),
             py::arg("step_dt_s") = 1e-6, py::arg("cycles_per_step") = 400,
             py::arg("core_clock_hz") = 4e8)
        .def_readonly("step_dt_s", &PowerConfig::step_dt_s)
        .def_readonly("cycles_per_step", &PowerConfig::cycles_per_step);

    py::class_<StepEnergy>(m, "StepEnergy")
        .def_readonly("energy_nj", &StepEnergy::energy_nj)
        .def_readonly("power_w", &StepEnergy::power_w);

    m.def(
        "accumulate_step",
        [](const PowerLut& lut, const ClassCounts& counts, const PowerConfig& cfg) {
            return accumulate_step(lut, counts, cfg);
        },
        py::arg("lut"), py::arg("counts"), py::arg("cfg"));

    py::enum_<PowerLevel>(m, "PowerLevel")
        .value("low", PowerLevel::Low)
        .value("medium", PowerLevel::Medium)
        .value("high", PowerLevel::High)
        .value("idle", PowerLevel::Idle);

    m.def("profile_power", &profile_power, py::arg("level"), py::arg("levels"));

    py::class_<Task>(m, "Task")
        .def(py::init([](int id, PowerLevel power_class) { return Task{id, power_class}; }),
             py::arg("id"), py::arg("power_class"))
        .def_readonly("id", &Task::id)
        .def_readonly("power_class", &Task::power_class);

    py::class_<TaskSet>(m, "TaskSet")
        .def(py::init([](const std::vector<Task>& tasks) { return TaskSet{tasks}; }),
             py::arg("tasks"))
        .def_readonly("tasks", &TaskSet::tasks);

    m.def("default_task_set", &default_task_set);

    py::class_<Mapping>(m, "Mapping")
        .def(py::init([](const std::map<int, int>& task_to_core) {
                 return Mapping{task_to_core};
             }),
             py::arg("task_to_core"))
        .def_readonly("task_to_core", &Mapping::task_to_core);

    py::enum_<ControlTarget>(m, "ControlTarget")
        .value("min_max_temp", ControlTarget::MinGlobalMaxTemp)
        .value("min_spread", ControlTarget::MinIntraTileSpread);

    py::class_<MappingScore>(m, "MappingScore")
        .def_readonly("temps_c", &MappingScore::temps_c)
        .def_readonly("global_max_c", &MappingScore::global_max_c)
        .def_readonly("tile_spread_c", &MappingScore::tile_spread_c)
        .def_readonly("objective", &MappingScore::objective);

    m.def("evaluate_mapping", &evaluate_mapping, py::arg("mapping"), py::arg("tasks"),
          py::arg("network"), py::arg("levels"), py::arg("target"));
    m.def("exhaustive_allocate", &exhaustive_allocate, py::arg("tasks"), py::arg("network"),
          py::arg("levels"), py::arg("target"));
    m.def("greedy_allocate", &greedy_allocate, py::arg("tasks"), py::arg("network"),
          py::arg("levels"), py::arg("target"));

    py::class_<SimSummary>(m, "SimSummary")
        .def_readonly("final_temp_c", &SimSummary::final_temp_c)
        .def_readonly("tile_max_temp_c", &SimSummary::tile_max_temp_c)
        .def_readonly("tile_spread_c", &SimSummary::tile_spread_c)
        .def_readonly("global_max_temp_c", &SimSummary::global_max_temp_c)
        .def_readonly("total_energy_nj", &SimSummary::total_energy_nj);

    py::class_<SimOutput>(m, "SimOutput")
        .def_readonly("step_dt_s", &SimOutput::step_dt_s)
        .def_readonly("summary", &SimOutput::summary)
        .def("series",
             [](const SimOutput& out) {
                 py::list rows;
                 for (const SeriesRow& r : out.rows)
                     rows.append(py::make_tuple(r.step, r.time_us, r.core, r.power_w, r.temp_c));
                 return rows;
             })
        .def("readout_count", [](const SimOutput& out) { return out.readouts.size(); });

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def_readonly("floorplan", &ScenarioConfig::floorplan)
        .def_readonly("params", &ScenarioConfig::params)
        .def_readonly("levels", &ScenarioConfig::levels)
        .def_readonly("duration_steps", &ScenarioConfig::duration_steps)
        .def_readonly("initial_temp_c", &ScenarioConfig::initial_temp_c);

    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("run_simulation", &run_simulation, py::arg("config"));
    m.def("emit_csv", &emit_csv, py::arg("output"), py::arg("path"));
}
