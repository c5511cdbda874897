#ifndef TPMON_ALLOC_HPP
#define TPMON_ALLOC_HPP

#include "tpmon/power.hpp"
#include "tpmon/thermal.hpp"
#include "tpmon/topology.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tpmon {

struct Task {
    int id = 0;
    PowerLevel power_class = PowerLevel::Low; // low, medium or high
};

struct TaskSet {
    std::vector<Task> tasks;
};

// 4 lowest-power plus 4 highest-power tasks, ids 0..7.
TaskSet default_task_set();

void validate(const TaskSet& ts, const Floorplan& fp);

// Injective task id -> flat core index; unassigned cores idle.
struct Mapping {
    std::map<int, int> task_to_core;
};

void validate(const Mapping& m, const TaskSet& ts, const Floorplan& fp);

enum class ControlTarget {
    MinGlobalMaxTemp,   // lowest global maximum temperature
    MinIntraTileSpread, // smallest max-min gap inside any tile, ties by max temp
};

const char* to_string(ControlTarget target);

struct MappingScore {
    std::vector<double> temps_c;       // per-core steady temperatures
    double global_max_c = 0.0;
    std::vector<double> tile_spread_c; // max - min within each tile
    double objective = 0.0;
    // Core assigned to each task in ascending task-id order; the
    // deterministic tie-break key.
    std::vector<int> tie_key;
};

// Temperatures closer than this are ranked as equal, so symmetric candidates
// fall through to the tie-break key.
inline constexpr double kObjectiveTieEps = 1e-9;

// True when (a_obj, a_secondary, a_key) ranks strictly better.
bool score_less(const MappingScore& a, const MappingScore& b, ControlTarget target);

// Steady-state evaluation of one mapping: profile power on assigned cores,
// idle elsewhere.
MappingScore evaluate_mapping(const Mapping& m, const TaskSet& ts, const ThermalNetwork& net,
                              const PowerLevels& levels, ControlTarget target);

// Enumerates every distinct placement of the power-class multiset onto the
// cores (tasks of equal class are interchangeable) and returns the argmin
// objective. Tasks are bound to their class's cores in ascending id order.
std::pair<Mapping, MappingScore> exhaustive_allocate(const TaskSet& ts,
                                                     const ThermalNetwork& net,
                                                     const PowerLevels& levels,
                                                     ControlTarget target);

// Places tasks in descending-power order (ties by id), each on the free core
// that minimizes the objective of the partial mapping.
std::pair<Mapping, MappingScore> greedy_allocate(const TaskSet& ts, const ThermalNetwork& net,
                                                 const PowerLevels& levels,
                                                 ControlTarget target);

} // namespace tpmon

#endif
