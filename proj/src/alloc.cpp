#include "tpmon/alloc.hpp"

#include "tpmon/errors.hpp"

#include <algorithm>
#include <set>

namespace tpmon {

TaskSet default_task_set() {
    TaskSet ts;
    for (int i = 0; i < 4; ++i)
        ts.tasks.push_back({i, PowerLevel::Low});
    for (int i = 4; i < 8; ++i)
        ts.tasks.push_back({i, PowerLevel::High});
    return ts;
}

void validate(const TaskSet& ts, const Floorplan& fp) {
    std::set<int> ids;
    for (const Task& t : ts.tasks) {
        if (!ids.insert(t.id).second)
            throw DomainError("task set: duplicate task id " + std::to_string(t.id));
        if (t.power_class == PowerLevel::Idle)
            throw DomainError("task set: task " + std::to_string(t.id) +
                              " must have class low, medium or high");
    }
    if (static_cast<int>(ts.tasks.size()) > fp.total_cores())
        throw DomainError("task set: " + std::to_string(ts.tasks.size()) + " tasks exceed " +
                          std::to_string(fp.total_cores()) + " cores");
}

void validate(const Mapping& m, const TaskSet& ts, const Floorplan& fp) {
    validate(ts, fp);
    std::set<int> task_ids;
    for (const Task& t : ts.tasks)
        task_ids.insert(t.id);
    std::set<int> used_cores;
    for (const auto& [task, core] : m.task_to_core) {
        if (!task_ids.count(task))
            throw DomainError("mapping: unknown task id " + std::to_string(task));
        if (core < 0 || core >= fp.total_cores())
            throw DomainError("mapping: core " + std::to_string(core) + " out of range");
        if (!used_cores.insert(core).second)
            throw DomainError("mapping: core " + std::to_string(core) +
                              " assigned to more than one task");
    }
    if (m.task_to_core.size() != ts.tasks.size())
        throw DomainError("mapping: expected an assignment for every task");
}

const char* to_string(ControlTarget target) {
    return target == ControlTarget::MinGlobalMaxTemp ? "min-max-temp" : "min-spread";
}

bool score_less(const MappingScore& a, const MappingScore& b, ControlTarget target) {
    if (a.objective < b.objective - kObjectiveTieEps)
        return true;
    if (a.objective > b.objective + kObjectiveTieEps)
        return false;
    if (target == ControlTarget::MinIntraTileSpread) {
        if (a.global_max_c < b.global_max_c - kObjectiveTieEps)
            return true;
        if (a.global_max_c > b.global_max_c + kObjectiveTieEps)
            return false;
    }
    return a.tie_key < b.tie_key;
}

namespace {

double class_power(PowerLevel cls, const PowerLevels& levels) {
    return profile_power(cls, levels);
}

MappingScore score_power_vector(const std::vector<double>& power, const ThermalNetwork& net,
                                ControlTarget target) {
    MappingScore s;
    s.temps_c = steady_state(net, power);
    s.global_max_c = *std::max_element(s.temps_c.begin(), s.temps_c.end());

    const Floorplan& fp = net.floorplan;
    const int per_tile = fp.cores_per_tile();
    s.tile_spread_c.resize(static_cast<size_t>(fp.n_tiles));
    double max_spread = 0.0;
    for (int t = 0; t < fp.n_tiles; ++t) {
        const auto begin = s.temps_c.begin() + static_cast<long>(t) * per_tile;
        const auto [lo, hi] = std::minmax_element(begin, begin + per_tile);
        s.tile_spread_c[static_cast<size_t>(t)] = *hi - *lo;
        max_spread = std::max(max_spread, *hi - *lo);
    }
    s.objective = target == ControlTarget::MinGlobalMaxTemp ? s.global_max_c : max_spread;
    return s;
}

std::vector<double> mapping_power_vector(const Mapping& m, const TaskSet& ts,
                                         const ThermalNetwork& net, const PowerLevels& levels) {
    std::vector<double> power(static_cast<size_t>(net.n), levels.p_idle);
    for (const Task& t : ts.tasks) {
        const auto it = m.task_to_core.find(t.id);
        if (it != m.task_to_core.end())
            power[static_cast<size_t>(it->second)] = class_power(t.power_class, levels);
    }
    return power;
}

std::vector<int> mapping_tie_key(const Mapping& m) {
    std::vector<int> key;
    key.reserve(m.task_to_core.size());
    for (const auto& [task, core] : m.task_to_core) // std::map iterates by ascending task id
        key.push_back(core);
    return key;
}

// Tasks of one class sorted by ascending id.
std::vector<std::vector<int>> tasks_by_class(const TaskSet& ts) {
    std::vector<std::vector<int>> by_class(3);
    std::vector<Task> sorted = ts.tasks;
    std::sort(sorted.begin(), sorted.end(), [](const Task& a, const Task& b) { return a.id < b.id; });
    for (const Task& t : sorted)
        by_class[static_cast<size_t>(t.power_class)].push_back(t.id);
    return by_class;
}

// Canonical mapping for one class placement: within each class, cores in
// ascending flat order are bound to task ids in ascending order.
Mapping mapping_from_placement(const std::vector<PowerLevel>& placement, const TaskSet& ts) {
    const std::vector<std::vector<int>> by_class = tasks_by_class(ts);
    std::vector<size_t> next(3, 0);
    Mapping m;
    for (size_t core = 0; core < placement.size(); ++core) {
        if (placement[core] == PowerLevel::Idle)
            continue;
        const size_t cls = static_cast<size_t>(placement[core]);
        m.task_to_core[by_class[cls][next[cls]++]] = static_cast<int>(core);
    }
    return m;
}

} // namespace

MappingScore evaluate_mapping(const Mapping& m, const TaskSet& ts, const ThermalNetwork& net,
                              const PowerLevels& levels, ControlTarget target) {
    validate(m, ts, net.floorplan);
    validate(levels);
    MappingScore s = score_power_vector(mapping_power_vector(m, ts, net, levels), net, target);
    s.tie_key = mapping_tie_key(m);
    return s;
}

std::pair<Mapping, MappingScore> exhaustive_allocate(const TaskSet& ts, const ThermalNetwork& net,
                                                     const PowerLevels& levels,
                                                     ControlTarget target) {
    validate(ts, net.floorplan);
    validate(levels);

    // One slot per core carrying a class or idle; next_permutation walks all
    // distinct placements of the multiset.
    std::vector<PowerLevel> placement(static_cast<size_t>(net.n), PowerLevel::Idle);
    size_t slot = 0;
    for (const Task& t : ts.tasks)
        placement[slot++] = t.power_class;
    std::sort(placement.begin(), placement.end());

    bool found = false;
    Mapping best_mapping;
    MappingScore best_score;
    do {
        std::vector<double> power(static_cast<size_t>(net.n), levels.p_idle);
        for (size_t core = 0; core < placement.size(); ++core)
            if (placement[core] != PowerLevel::Idle)
                power[core] = class_power(placement[core], levels);

        MappingScore s = score_power_vector(power, net, target);
        Mapping m = mapping_from_placement(placement, ts);
        s.tie_key = mapping_tie_key(m);
        if (!found || score_less(s, best_score, target)) {
            found = true;
            best_mapping = std::move(m);
            best_score = std::move(s);
        }
    } while (std::next_permutation(placement.begin(), placement.end()));

    return {best_mapping, best_score};
}

std::pair<Mapping, MappingScore> greedy_allocate(const TaskSet& ts, const ThermalNetwork& net,
                                                 const PowerLevels& levels, ControlTarget target) {
    validate(ts, net.floorplan);
    validate(levels);

    std::vector<Task> order = ts.tasks;
    std::sort(order.begin(), order.end(), [&](const Task& a, const Task& b) {
        const double pa = class_power(a.power_class, levels);
        const double pb = class_power(b.power_class, levels);
        if (pa != pb)
            return pa > pb;
        return a.id < b.id;
    });

    Mapping m;
    std::vector<bool> core_used(static_cast<size_t>(net.n), false);
    TaskSet placed; // grows task by task so partial mappings validate

    for (const Task& t : order) {
        placed.tasks.push_back(t);
        int best_core = -1;
        MappingScore best_score;
        for (int core = 0; core < net.n; ++core) {
            if (core_used[static_cast<size_t>(core)])
                continue;
            Mapping candidate = m;
            candidate.task_to_core[t.id] = core;
            MappingScore s = evaluate_mapping(candidate, placed, net, levels, target);
            if (best_core < 0 || score_less(s, best_score, target)) {
                best_core = core;
                best_score = std::move(s);
            }
        }
        m.task_to_core[t.id] = best_core;
        core_used[static_cast<size_t>(best_core)] = true;
    }

    MappingScore final_score = evaluate_mapping(m, ts, net, levels, target);
    return {m, final_score};
}

} // namespace tpmon
