#include "tpmon/power.hpp"

#include "tpmon/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace tpmon {

namespace {

constexpr std::array<const char*, kInstructionClassCount> kClassNames = {
    "ld", "st", "alu", "branch", "mul", "div", "fpu", "nop"};

double snap_to_quantum(double energy, double quantum) {
    if (quantum <= 0.0)
        return energy;
    // Round to nearest multiple, ties away from zero (energies are >= 0).
    return std::floor(energy / quantum + 0.5) * quantum;
}

} // namespace

const char* to_string(InstructionClass c) {
    return kClassNames[static_cast<size_t>(c)];
}

InstructionClass instruction_class_from_string(const std::string& name) {
    for (int i = 0; i < kInstructionClassCount; ++i)
        if (name == kClassNames[static_cast<size_t>(i)])
            return static_cast<InstructionClass>(i);
    throw ValidationError("unknown instruction class '" + name + "'");
}

PowerLut make_power_lut(const std::array<double, kInstructionClassCount>& energy_nj,
                        double static_power_w, double quantum_nj) {
    if (!(static_power_w >= 0.0))
        throw ValidationError("power LUT: static power must be >= 0");
    if (!(quantum_nj >= 0.0))
        throw ValidationError("power LUT: quantum must be >= 0");
    PowerLut lut;
    lut.static_power_w = static_power_w;
    lut.quantum_nj = quantum_nj;
    for (int i = 0; i < kInstructionClassCount; ++i) {
        const double e = energy_nj[static_cast<size_t>(i)];
        if (!(e >= 0.0))
            throw ValidationError(std::string("power LUT: energy for '") + kClassNames[i] +
                                  "' must be >= 0");
        lut.energy_nj[static_cast<size_t>(i)] = snap_to_quantum(e, quantum_nj);
    }
    return lut;
}

double lut_lookup(const PowerLut& lut, InstructionClass c) {
    return lut.energy_nj[static_cast<size_t>(c)];
}

PowerLut scale_lut(const PowerLut& lut, double k) {
    if (!(k >= 0.0))
        throw DomainError("LUT scale factor must be >= 0");
    PowerLut scaled = lut;
    scaled.quantum_nj = 0.0; // scaling leaves the fixed-point grid
    for (double& e : scaled.energy_nj)
        e *= k;
    scaled.static_power_w *= k;
    return scaled;
}

void validate(const PowerConfig& cfg) {
    if (!(cfg.step_dt_s > 0.0))
        throw ValidationError("power config: step_dt must be > 0");
    if (cfg.cycles_per_step < 1)
        throw ValidationError("power config: cycles_per_step must be >= 1");
    if (!(cfg.core_clock_hz > 0.0))
        throw ValidationError("power config: core_clock_hz must be > 0");
    const long long expected = std::llround(cfg.step_dt_s * cfg.core_clock_hz);
    if (expected != cfg.cycles_per_step)
        throw ValidationError("power config: cycles_per_step (" +
                              std::to_string(cfg.cycles_per_step) +
                              ") must equal round(step_dt * core_clock_hz) = " +
                              std::to_string(expected));
}

StepEnergy accumulate_step(const PowerLut& lut, const ClassCounts& counts,
                           const PowerConfig& cfg) {
    std::uint64_t total = 0;
    for (std::uint32_t c : counts)
        total += c;
    if (total > static_cast<std::uint64_t>(cfg.cycles_per_step))
        throw ValidationError("trace step has " + std::to_string(total) +
                              " instructions, exceeding " + std::to_string(cfg.cycles_per_step) +
                              " cycles per step");

    StepEnergy out;
    for (int i = 0; i < kInstructionClassCount; ++i)
        out.energy_nj += static_cast<double>(counts[static_cast<size_t>(i)]) *
                         lut.energy_nj[static_cast<size_t>(i)];
    out.energy_nj += lut.static_power_w * cfg.step_dt_s * 1e9;
    out.power_w = out.energy_nj * 1e-9 / cfg.step_dt_s;
    return out;
}

std::vector<std::vector<double>> trace_power_series(const PowerLut& lut,
                                                    const std::vector<TraceStep>& trace,
                                                    const PowerConfig& cfg) {
    std::vector<std::vector<double>> series;
    series.reserve(trace.size());
    for (size_t s = 0; s < trace.size(); ++s) {
        std::vector<double> row;
        row.reserve(trace[s].per_core.size());
        for (size_t c = 0; c < trace[s].per_core.size(); ++c) {
            try {
                row.push_back(accumulate_step(lut, trace[s].per_core[c], cfg).power_w);
            } catch (const ValidationError& e) {
                throw ValidationError("trace step " + std::to_string(s) + ", core " +
                                      std::to_string(c) + ": " + e.what());
            }
        }
        series.push_back(std::move(row));
    }
    return series;
}

const char* to_string(PowerLevel level) {
    switch (level) {
    case PowerLevel::Low:
        return "low";
    case PowerLevel::Medium:
        return "medium";
    case PowerLevel::High:
        return "high";
    case PowerLevel::Idle:
        return "idle";
    }
    return "?";
}

PowerLevel power_level_from_string(const std::string& name) {
    if (name == "low")
        return PowerLevel::Low;
    if (name == "medium")
        return PowerLevel::Medium;
    if (name == "high")
        return PowerLevel::High;
    if (name == "idle")
        return PowerLevel::Idle;
    throw ValidationError("unknown power level '" + name + "' (expected low, medium, high or "
                          "idle)");
}

double profile_power(PowerLevel level, const PowerLevels& levels) {
    switch (level) {
    case PowerLevel::Low:
        return levels.p_low;
    case PowerLevel::Medium:
        return levels.p_med;
    case PowerLevel::High:
        return levels.p_high;
    case PowerLevel::Idle:
        return levels.p_idle;
    }
    throw DomainError("invalid power level");
}

PowerLut load_power_lut(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open power LUT file '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("power LUT '" + path.string() + "': " + e.what());
    }
    if (!j.is_object() || !j.contains("energies_nj") || !j["energies_nj"].is_object())
        throw ValidationError("power LUT '" + path.string() +
                              "': expected an object with an 'energies_nj' map");

    std::array<double, kInstructionClassCount> energies{};
    std::array<bool, kInstructionClassCount> seen{};
    for (const auto& [key, value] : j["energies_nj"].items()) {
        const InstructionClass c = instruction_class_from_string(key);
        energies[static_cast<size_t>(c)] = value.get<double>();
        seen[static_cast<size_t>(c)] = true;
    }
    for (int i = 0; i < kInstructionClassCount; ++i)
        if (!seen[static_cast<size_t>(i)])
            throw ValidationError(std::string("power LUT '") + path.string() +
                                  "': missing energy for class '" + kClassNames[i] + "'");
    return make_power_lut(energies, j.value("static_power_w", 0.0), j.value("quantum_nj", 0.0));
}

std::vector<TraceStep> load_trace(const std::filesystem::path& path, int n_cores) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open trace file '" + path.string() + "'");

    std::string line;
    if (!std::getline(in, line))
        throw ValidationError("trace '" + path.string() + "': empty file");
    const std::string expected_header = "step,core,ld,st,alu,branch,mul,div,fpu,nop";
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != expected_header)
        throw ValidationError("trace '" + path.string() + "': header must be '" +
                              expected_header + "'");

    std::vector<TraceStep> trace;
    std::vector<std::vector<bool>> present;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;

        std::istringstream row(line);
        std::string field;
        std::array<long long, 2 + kInstructionClassCount> values{};
        for (size_t i = 0; i < values.size(); ++i) {
            if (!std::getline(row, field, ','))
                throw ValidationError("trace '" + path.string() + "' line " +
                                      std::to_string(line_no) + ": expected 10 fields");
            try {
                values[i] = std::stoll(field);
            } catch (const std::exception&) {
                throw ValidationError("trace '" + path.string() + "' line " +
                                      std::to_string(line_no) + ": '" + field +
                                      "' is not an integer");
            }
            if (values[i] < 0)
                throw ValidationError("trace '" + path.string() + "' line " +
                                      std::to_string(line_no) + ": negative value");
        }
        if (std::getline(row, field, ','))
            throw ValidationError("trace '" + path.string() + "' line " +
                                  std::to_string(line_no) + ": too many fields");

        const long long step = values[0];
        const long long core = values[1];
        if (step > 100'000'000)
            throw ValidationError("trace '" + path.string() + "' line " +
                                  std::to_string(line_no) + ": step index " +
                                  std::to_string(step) + " unreasonably large");
        if (core >= n_cores)
            throw ValidationError("trace '" + path.string() + "' line " +
                                  std::to_string(line_no) + ": core " + std::to_string(core) +
                                  " out of range for " + std::to_string(n_cores) + " cores");
        while (static_cast<long long>(trace.size()) <= step) {
            trace.push_back(TraceStep{std::vector<ClassCounts>(static_cast<size_t>(n_cores))});
            present.emplace_back(static_cast<size_t>(n_cores), false);
        }
        if (present[static_cast<size_t>(step)][static_cast<size_t>(core)])
            throw ValidationError("trace '" + path.string() + "' line " +
                                  std::to_string(line_no) + ": duplicate row for step " +
                                  std::to_string(step) + ", core " + std::to_string(core));
        present[static_cast<size_t>(step)][static_cast<size_t>(core)] = true;
        ClassCounts& counts = trace[static_cast<size_t>(step)].per_core[static_cast<size_t>(core)];
        for (int i = 0; i < kInstructionClassCount; ++i)
            counts[static_cast<size_t>(i)] = static_cast<std::uint32_t>(values[2 + i]);
    }
    return trace;
}

} // namespace tpmon
