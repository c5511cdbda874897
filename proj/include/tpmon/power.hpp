#ifndef TPMON_POWER_HPP
#define TPMON_POWER_HPP

#include "tpmon/thermal.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace tpmon {

// Closed reduction of the core's instruction set; every trace column maps to
// exactly one class.
enum class InstructionClass : int {
    Ld = 0,
    St,
    Alu,
    Branch,
    Mul,
    Div,
    Fpu,
    Nop,
};

inline constexpr int kInstructionClassCount = 8;

const char* to_string(InstructionClass c);
InstructionClass instruction_class_from_string(const std::string& name);

// Average energy per executed instruction, nJ per class, plus a static power
// floor. A nonzero quantum snaps every energy onto a fixed-point grid at
// load time (round to nearest multiple, ties up).
struct PowerLut {
    std::array<double, kInstructionClassCount> energy_nj{};
    double static_power_w = 0.0;
    double quantum_nj = 0.0;
};

// Validates and applies quantum snapping; the result satisfies the PowerLut
// invariants.
PowerLut make_power_lut(const std::array<double, kInstructionClassCount>& energy_nj,
                        double static_power_w = 0.0, double quantum_nj = 0.0);

double lut_lookup(const PowerLut& lut, InstructionClass c);

// Every stored energy and the static power multiplied by k.
PowerLut scale_lut(const PowerLut& lut, double k);

// Monitor cadence: one accumulation step of step_dt covering cycles_per_step
// core cycles.
struct PowerConfig {
    double step_dt_s = 1e-6;
    int cycles_per_step = 400;
    double core_clock_hz = 4e8;
};

void validate(const PowerConfig& cfg);

// Per-class executed-instruction counts of one core over one step.
using ClassCounts = std::array<std::uint32_t, kInstructionClassCount>;

// Counts for every core over one step, indexed by flat core index.
struct TraceStep {
    std::vector<ClassCounts> per_core;
};

struct StepEnergy {
    double energy_nj = 0.0;
    double power_w = 0.0;
};

// E = sum over classes (ascending enumeration order) of count * energy, plus
// static_power * step_dt; P = E / step_dt. Counts exceeding cycles_per_step
// in total are rejected: the trace would be inconsistent with the clock.
StepEnergy accumulate_step(const PowerLut& lut, const ClassCounts& counts,
                           const PowerConfig& cfg);

// accumulate_step applied per step and core; [step][core] powers in W.
// Validation failures carry the offending step index.
std::vector<std::vector<double>> trace_power_series(const PowerLut& lut,
                                                    const std::vector<TraceStep>& trace,
                                                    const PowerConfig& cfg);

enum class PowerLevel : int {
    Low = 0,
    Medium,
    High,
    Idle,
};

const char* to_string(PowerLevel level);
PowerLevel power_level_from_string(const std::string& name);

double profile_power(PowerLevel level, const PowerLevels& levels);

// LUT file: {"energies_nj": {"ld": ..., ...}, "static_power_w": ...,
// "quantum_nj": ...}.
PowerLut load_power_lut(const std::filesystem::path& path);

// Trace CSV with header step,core,ld,st,alu,branch,mul,div,fpu,nop; one row
// per (step, core), missing rows meaning all-zero counts. Trace length is
// max step index + 1.
std::vector<TraceStep> load_trace(const std::filesystem::path& path, int n_cores);

} // namespace tpmon

#endif
