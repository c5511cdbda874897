// Acceptance suite: one pass/fail line per criterion. Oracles here are
// implemented locally (own assembly, own solver, own enumeration) so they
// stay independent of the library paths they check.
//
// Usage: tpmon_acceptance <cli_path> <scenario_dir> <out_dir>

#include "tpmon/alloc.hpp"
#include "tpmon/errors.hpp"
#include "tpmon/monitor.hpp"
#include "tpmon/power.hpp"
#include "tpmon/scenario.hpp"
#include "tpmon/thermal.hpp"
#include "tpmon/topology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace tpmon;

namespace {

std::filesystem::path g_cli;
std::filesystem::path g_scenarios;
std::filesystem::path g_out;

struct Checker {
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what) {
        if (!ok)
            failures.push_back(what);
    }
    void require_close(double actual, double expected, double tol, const std::string& what) {
        if (!(std::fabs(actual - expected) <= tol)) {
            std::ostringstream ss;
            ss << what << ": got " << actual << ", expected " << expected << " +/- " << tol;
            failures.push_back(ss.str());
        }
    }
};

// ---------------------------------------------------------------------------
// Oracle helpers: local dense solve and local network assembly.
// ---------------------------------------------------------------------------

std::vector<double> oracle_solve(std::vector<double> m, std::vector<double> rhs) {
    const int n = static_cast<int>(rhs.size());
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(m[r * n + col]) > std::fabs(m[pivot * n + col]))
                pivot = r;
        for (int c = 0; c < n; ++c)
            std::swap(m[pivot * n + c], m[col * n + c]);
        std::swap(rhs[pivot], rhs[col]);
        for (int r = col + 1; r < n; ++r) {
            const double f = m[r * n + col] / m[col * n + col];
            for (int c = col; c < n; ++c)
                m[r * n + c] -= f * m[col * n + c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> x(rhs.size());
    for (int r = n - 1; r >= 0; --r) {
        double acc = rhs[r];
        for (int c = r + 1; c < n; ++c)
            acc -= m[r * n + c] * x[c];
        x[r] = acc / m[r * n + r];
    }
    return x;
}

// Normalized conductance matrix of one 2x2 tile (unit ambient conductance,
// lateral ratio r). Edges: 0-1, 0-2, 1-3, 2-3.
std::vector<double> tile_matrix(double r) {
    std::vector<double> m(16, 0.0);
    const int edges[4][2] = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    for (int i = 0; i < 4; ++i)
        m[i * 4 + i] = 1.0;
    for (const auto& e : edges) {
        m[e[0] * 4 + e[0]] += r;
        m[e[1] * 4 + e[1]] += r;
        m[e[0] * 4 + e[1]] -= r;
        m[e[1] * 4 + e[0]] -= r;
    }
    return m;
}

// Two uncoupled 2x2 tiles with explicit conductances.
std::vector<double> two_tile_matrix(double g_amb, double g_lat) {
    std::vector<double> m(64, 0.0);
    const int edges[4][2] = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    for (int t = 0; t < 2; ++t) {
        const int base = 4 * t;
        for (int i = 0; i < 4; ++i)
            m[(base + i) * 8 + base + i] = g_amb;
        for (const auto& e : edges) {
            const int a = base + e[0];
            const int b = base + e[1];
            m[a * 8 + a] += g_lat;
            m[b * 8 + b] += g_lat;
            m[a * 8 + b] -= g_lat;
            m[b * 8 + a] -= g_lat;
        }
    }
    return m;
}

std::string read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_command(const std::string& cmd) {
    return std::system(cmd.c_str());
}

// ---------------------------------------------------------------------------
// Criterion 1: calibration regression cross-checked by grid search.
// ---------------------------------------------------------------------------
void criterion_calibration(Checker& c) {
    const CalibrationResult cal = calibrate(CalibrationTargets{}, 0.1, 5e-3);
    for (double r : cal.residuals)
        c.require(r <= 0.05, "calibration residual above 0.05 degC");
    const double g = cal.params.g_amb;
    c.require_close(cal.params.t_amb, 43.818, 1e-2, "t_amb");
    c.require_close(cal.params.g_lat / g, 1.5, 1e-2, "r = g_lat/g_amb");
    c.require_close(cal.levels.p_high / g, 10.182, 1e-2, "p_high/g");
    c.require_close(cal.levels.p_low / g, 3.182, 1e-2, "p_low/g");
    c.require_close(cal.levels.p_med / g, 7.747, 1e-2, "p_med/g");

    // Grid-search oracle: sweep (r, t_amb), solve the powers per point with
    // the local 4x4 solver, keep the global residual minimum.
    const double t1 = 47.0, t2 = 53.0, t3 = 51.0, t4 = 54.0, t5 = 47.0;
    double best_total = 1e300;
    double best_t_amb = 0.0, best_r = 0.0, best_qm = 0.0;
    for (int jr = 0; jr <= 5000; ++jr) {
        const double r = 1e-3 * jr;
        const std::vector<double> m = tile_matrix(r);
        const double a = oracle_solve(m, {1.0, 0.0, 0.0, 0.0})[0];
        const std::vector<double> diag_pair = oracle_solve(m, {1.0, 0.0, 0.0, 1.0});
        const std::vector<double> off_pair = oracle_solve(m, {0.0, 1.0, 1.0, 0.0});
        const double cd = diag_pair[0]; // hot-core rise per unit diagonal-pair load
        const double co = off_pair[0];  // hot-core rise per unit opposite-pair load
        for (int it = 0; it <= 30000; ++it) {
            const double t_amb = 20.0 + 1e-3 * it;
            const double qh = t4 - t_amb;
            const double ql = t5 - t_amb;
            const double c1 = t1 - t_amb;
            const double c2 = t2 - t_amb - qh * (1.0 - a);
            const double x = 0.5 * (c1 + c2); // a*q_med balancing both residuals
            const double res12 = std::fabs(c1 - x);
            const double res3 = std::fabs(t_amb + qh * cd + ql * co - t3);
            const double total = std::max(res12, res3);
            if (total < best_total) {
                best_total = total;
                best_t_amb = t_amb;
                best_r = r;
                best_qm = x / a;
            }
        }
    }
    c.require(best_total <= 0.05, "grid-search oracle found no parameters within tolerance");
    c.require_close(best_t_amb, cal.params.t_amb, 1e-2, "oracle t_amb vs closed form");
    c.require_close(best_r, cal.params.g_lat / g, 1e-2, "oracle r vs closed form");
    c.require_close(54.0 - best_t_amb, cal.levels.p_high / g, 1e-2, "oracle q_high");
    c.require_close(47.0 - best_t_amb, cal.levels.p_low / g, 1e-2, "oracle q_low");
    c.require_close(best_qm, cal.levels.p_med / g, 1e-2, "oracle q_med");
}

// ---------------------------------------------------------------------------
// Criterion 2: the five reference temperatures via steady_state.
// ---------------------------------------------------------------------------
void criterion_reference_datapoints(Checker& c) {
    const CalibrationResult cal = calibrate(CalibrationTargets{});
    const ThermalNetwork net = build_network(Floorplan{1, 2, 2, false}, cal.params);
    const double pl = cal.levels.p_low;
    const double pm = cal.levels.p_med;
    const double ph = cal.levels.p_high;
    const auto max_of = [](const std::vector<double>& v) {
        return *std::max_element(v.begin(), v.end());
    };

    const double single = steady_state(net, {pm, 0, 0, 0})[0];
    c.require_close(single, 47.0, 0.05, "single medium core");

    const double crowded = steady_state(net, {pm, ph, ph, ph})[0];
    c.require_close(crowded, 53.0, 0.05, "medium core with high tile-mates");
    c.require(std::llround(100.0 * (crowded - single) / single) == 13,
              "(53-47)/47 must round to +13%");

    c.require_close(max_of(steady_state(net, {ph, pl, pl, ph})), 51.0, 0.05,
                    "mixed tile, highs diagonal");
    c.require_close(max_of(steady_state(net, {ph, ph, ph, ph})), 54.0, 0.05, "uniform high tile");
    c.require_close(max_of(steady_state(net, {pl, pl, pl, pl})), 47.0, 0.05, "uniform low tile");
}

// ---------------------------------------------------------------------------
// Criterion 3: allocator optimality for the lowest-global-max target.
// ---------------------------------------------------------------------------
void criterion_allocator_optimality(Checker& c) {
    const CalibrationResult cal = calibrate(CalibrationTargets{});
    const Floorplan fp{2, 2, 2, false};
    const ThermalNetwork net = build_network(fp, cal.params);
    const TaskSet ts = default_task_set();

    const auto [mapping, score] =
        exhaustive_allocate(ts, net, cal.levels, ControlTarget::MinGlobalMaxTemp);
    c.require_close(score.objective, 51.0, 0.05, "exhaustive min-max objective");

    // Structure: 2 high + 2 low per tile, highs on a diagonal.
    for (int tile = 0; tile < 2; ++tile) {
        std::vector<int> highs;
        for (int id = 4; id < 8; ++id)
            if (mapping.task_to_core.at(id) / 4 == tile)
                highs.push_back(mapping.task_to_core.at(id) % 4);
        c.require(highs.size() == 2, "each tile must take exactly two high tasks");
        if (highs.size() == 2) {
            const CoreId a = core_from_flat(fp, highs[0]);
            const CoreId b = core_from_flat(fp, highs[1]);
            c.require(a.row != b.row && a.col != b.col, "high pair must sit on a tile diagonal");
        }
    }

    // Named comparators, evaluated through the library scorer.
    Mapping adjacent;
    adjacent.task_to_core = {{4, 0}, {5, 1}, {0, 2}, {1, 3}, {6, 4}, {7, 5}, {2, 6}, {3, 7}};
    const double adj = evaluate_mapping(adjacent, ts, net, cal.levels,
                                        ControlTarget::MinGlobalMaxTemp)
                           .objective;
    c.require_close(adj, 51.38, 0.05, "adjacent-highs variant");
    c.require(adj > score.objective + 0.1, "adjacent variant must be strictly worse");

    Mapping split31; // 3 high + 1 low on tile 0, 1 high + 3 low on tile 1
    split31.task_to_core = {{4, 0}, {5, 1}, {6, 2}, {0, 3}, {7, 4}, {1, 5}, {2, 6}, {3, 7}};
    const double split = evaluate_mapping(split31, ts, net, cal.levels,
                                          ControlTarget::MinGlobalMaxTemp)
                             .objective;
    c.require_close(split, 52.88, 0.05, "3+1 split hottest core");
    c.require(split > score.objective + 0.1, "3+1 split must be strictly worse");

    // Oracle: every one of the C(8,4) = 70 class placements, scored with the
    // local solver on a locally assembled two-tile network.
    const std::vector<double> m = two_tile_matrix(cal.params.g_amb, cal.params.g_lat);
    const double inj = cal.params.g_amb * cal.params.t_amb;
    double oracle_best = 1e300;
    int placements = 0;
    for (int mask = 0; mask < 256; ++mask) {
        if (__builtin_popcount(mask) != 4)
            continue;
        ++placements;
        std::vector<double> rhs(8, inj);
        for (int i = 0; i < 8; ++i)
            rhs[i] += (mask >> i & 1) ? cal.levels.p_high : cal.levels.p_low;
        const std::vector<double> temps = oracle_solve(m, rhs);
        oracle_best = std::min(oracle_best, *std::max_element(temps.begin(), temps.end()));
    }
    c.require(placements == 70, "expected 70 two-tile class placements");
    c.require_close(oracle_best, 51.0, 0.05, "oracle optimum");
    c.require_close(oracle_best, score.objective, 1e-6, "oracle vs exhaustive_allocate");
}

// ---------------------------------------------------------------------------
// Criterion 4: allocator spread target.
// ---------------------------------------------------------------------------
void criterion_allocator_spread(Checker& c) {
    const CalibrationResult cal = calibrate(CalibrationTargets{});
    const ThermalNetwork net = build_network(Floorplan{2, 2, 2, false}, cal.params);

    const auto [mapping, score] = exhaustive_allocate(default_task_set(), net, cal.levels,
                                                      ControlTarget::MinIntraTileSpread);
    c.require(score.tile_spread_c.size() == 2, "two tiles expected");
    for (double spread : score.tile_spread_c)
        c.require(std::fabs(spread) <= 1e-9, "intra-tile spread must vanish");

    std::array<std::set<int>, 2> tiles_by_class; // [low, high] -> tiles used
    for (const auto& [task, core] : mapping.task_to_core)
        tiles_by_class[task >= 4 ? 1 : 0].insert(core / 4);
    c.require(tiles_by_class[0].size() == 1 && tiles_by_class[1].size() == 1 &&
                  tiles_by_class[0] != tiles_by_class[1],
              "mapping must segregate the classes by tile");

    const double hot = *std::max_element(score.temps_c.begin(), score.temps_c.end());
    const double cold = *std::min_element(score.temps_c.begin(), score.temps_c.end());
    c.require_close(hot, 54.0, 0.05, "uniform high tile");
    c.require_close(cold, 47.0, 0.05, "uniform low tile");
}

// ---------------------------------------------------------------------------
// Criterion 5: transient runs agree with the steady solve.
// ---------------------------------------------------------------------------
void criterion_transient_agreement(Checker& c) {
    const std::array<const char*, 4> scenarios = {"single_medium.json",
                                                  "medium_high_neighbors.json",
                                                  "mixed_diagonal.json", "segregated.json"};
    for (const char* name : scenarios) {
        const ScenarioConfig cfg = load_scenario(g_scenarios / name);
        const SimOutput out = run_simulation(cfg);
        const ThermalNetwork net = build_network(cfg.floorplan, cfg.params);
        const std::vector<double> target = steady_state(net, workload_power(cfg, 0));
        const int n = net.n;

        for (int i = 0; i < n; ++i)
            c.require(std::fabs(out.summary.final_temp_c[i] - target[i]) <= 0.01,
                      std::string(name) + ": final temps must match steady state within 0.01");

        const auto weighted_norm = [&](const std::vector<double>& temps) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                const double e = temps[i] - target[i];
                acc += net.cap[i] * e * e;
            }
            return std::sqrt(acc);
        };
        std::vector<double> temps(n, cfg.initial_temp_c);
        double prev = weighted_norm(temps);
        bool monotone = true;
        for (std::int64_t step = 0; step < cfg.duration_steps; ++step) {
            for (int i = 0; i < n; ++i)
                temps[i] = out.rows[static_cast<size_t>(step) * n + i].temp_c;
            const double cur = weighted_norm(temps);
            if (cur > prev * (1.0 + 1e-12) + 1e-15) {
                monotone = false;
                break;
            }
            prev = cur;
        }
        c.require(monotone, std::string(name) + ": weighted deviation norm must not increase");
    }
}

// ---------------------------------------------------------------------------
// Criterion 6: first-order convergence of the integrator.
// ---------------------------------------------------------------------------
void criterion_integrator_order(Checker& c) {
    ThermalParams p;
    p.g_amb = 1.0;
    p.cap = 1.0;
    p.t_amb = 0.0;
    const ThermalNetwork net = build_network(Floorplan{1, 1, 1, false}, p);
    const std::vector<double> power{1.0};

    const auto max_error = [&](double dt) {
        std::vector<double> temps{0.0};
        double worst = 0.0;
        const int steps = static_cast<int>(std::llround(1.0 / dt));
        for (int s = 1; s <= steps; ++s) {
            temps = transient_step(net, temps, power, dt);
            worst = std::max(worst, std::fabs(temps[0] - (1.0 - std::exp(-dt * s))));
        }
        return worst;
    };
    const double ratio = max_error(0.01) / max_error(0.005);
    c.require(ratio >= 1.8 && ratio <= 2.2,
              "halving dt must halve the error (ratio " + std::to_string(ratio) + ")");
}

// ---------------------------------------------------------------------------
// Criterion 7: thermal property suite on random networks.
// ---------------------------------------------------------------------------
void criterion_thermal_properties(Checker& c) {
    std::mt19937 rng(20240801);
    std::uniform_int_distribution<int> tiles(1, 4);
    std::uniform_int_distribution<int> dim(1, 2);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_real_distribution<double> g_amb(0.05, 2.0);
    std::uniform_real_distribution<double> g_lat(0.0, 2.0);
    std::uniform_real_distribution<double> g_tile(0.0, 1.0);
    std::uniform_real_distribution<double> caps(1e-4, 1e-2);
    std::uniform_real_distribution<double> ambient(20.0, 50.0);
    std::uniform_real_distribution<double> watts(0.0, 2.0);
    std::uniform_real_distribution<double> coef(0.0, 2.0);

    for (int iter = 0; iter < 200; ++iter) {
        Floorplan fp{tiles(rng), dim(rng), dim(rng), coin(rng) == 1};
        ThermalParams params;
        params.g_amb = g_amb(rng);
        params.g_lat = g_lat(rng);
        params.g_tile = g_tile(rng);
        params.cap = caps(rng);
        params.t_amb = ambient(rng);
        const ThermalNetwork net = build_network(fp, params);
        const int n = net.n;

        std::vector<double> p1(n), p2(n);
        for (double& v : p1)
            v = watts(rng);
        for (double& v : p2)
            v = watts(rng);
        const auto t1 = steady_state(net, p1);
        const auto t2 = steady_state(net, p2);

        double rhs_max = 1.0, residual = 0.0;
        for (int i = 0; i < n; ++i) {
            const double rhs = p1[i] + net.ambient_inj[i];
            rhs_max = std::max(rhs_max, std::fabs(rhs));
            double row = -rhs;
            for (int j = 0; j < n; ++j)
                row += net.at(i, j) * t1[j];
            residual = std::max(residual, std::fabs(row));
        }
        c.require(residual <= 1e-9 * rhs_max, "linear-solve residual out of tolerance");

        double outflow = 0.0, inflow = 0.0;
        for (int i = 0; i < n; ++i) {
            outflow += params.g_amb * (t1[i] - params.t_amb);
            inflow += p1[i];
        }
        c.require(std::fabs(outflow - inflow) <= 1e-9 * std::max(1.0, std::fabs(inflow)),
                  "energy balance out of tolerance");

        const double alpha = coef(rng), beta = coef(rng);
        std::vector<double> mix(n);
        for (int i = 0; i < n; ++i)
            mix[i] = alpha * p1[i] + beta * p2[i];
        const auto tm = steady_state(net, mix);
        for (int i = 0; i < n; ++i) {
            const double lhs = tm[i] - params.t_amb;
            const double rhs = alpha * (t1[i] - params.t_amb) + beta * (t2[i] - params.t_amb);
            c.require(std::fabs(lhs - rhs) <= 1e-9 * std::max(1.0, std::fabs(rhs)),
                      "affine-in-power property violated");
        }

        std::vector<double> raised = p1;
        for (double& v : raised)
            v += watts(rng) * 0.5;
        const auto tr = steady_state(net, raised);
        for (int i = 0; i < n; ++i)
            c.require(tr[i] >= t1[i] - 1e-12, "monotonicity violated");
    }
}

// ---------------------------------------------------------------------------
// Criterion 8: power accumulation equals per-instruction summation.
// ---------------------------------------------------------------------------
void criterion_power_oracle(Checker& c) {
    std::mt19937 rng(20240802);
    std::uniform_real_distribution<double> energy(0.0, 5.0);
    std::uniform_real_distribution<double> statics(0.0, 0.2);
    std::uniform_int_distribution<int> budget(0, 400);
    std::uniform_int_distribution<int> cls(0, kInstructionClassCount - 1);
    const PowerConfig cfg;

    for (int iter = 0; iter < 500; ++iter) {
        std::array<double, kInstructionClassCount> e{};
        for (double& v : e)
            v = energy(rng);
        const PowerLut lut = make_power_lut(e, statics(rng));

        ClassCounts counts{};
        int remaining = budget(rng);
        while (remaining > 0) {
            const int take = std::uniform_int_distribution<int>(1, remaining)(rng);
            counts[static_cast<size_t>(cls(rng))] += static_cast<std::uint32_t>(take);
            remaining -= take;
        }

        double slow = 0.0;
        for (int k = 0; k < kInstructionClassCount; ++k)
            for (std::uint32_t q = 0; q < counts[static_cast<size_t>(k)]; ++q)
                slow += lut.energy_nj[static_cast<size_t>(k)];
        slow += lut.static_power_w * cfg.step_dt_s * 1e9;

        const double fast = accumulate_step(lut, counts, cfg).energy_nj;
        c.require(std::fabs(fast - slow) <= 1e-12 * std::max(1.0, std::fabs(slow)),
                  "accumulate_step must match per-instruction summation");
    }

    // Additivity of the dynamic part, exact at quantum = 0 (dyadic energies).
    std::uniform_int_distribution<int> grid(0, 5 * 1024);
    std::uniform_int_distribution<int> small(0, 25);
    for (int iter = 0; iter < 500; ++iter) {
        std::array<double, kInstructionClassCount> e{};
        for (double& v : e)
            v = static_cast<double>(grid(rng)) / 1024.0;
        const PowerLut lut = make_power_lut(e, 0.125);
        ClassCounts c1{}, c2{}, sum{};
        for (int k = 0; k < kInstructionClassCount; ++k) {
            c1[static_cast<size_t>(k)] = static_cast<std::uint32_t>(small(rng));
            c2[static_cast<size_t>(k)] = static_cast<std::uint32_t>(small(rng));
            sum[static_cast<size_t>(k)] = c1[static_cast<size_t>(k)] + c2[static_cast<size_t>(k)];
        }
        const double static_nj = lut.static_power_w * cfg.step_dt_s * 1e9;
        const double lhs = accumulate_step(lut, sum, cfg).energy_nj - static_nj;
        const double rhs = (accumulate_step(lut, c1, cfg).energy_nj - static_nj) +
                           (accumulate_step(lut, c2, cfg).energy_nj - static_nj);
        c.require(lhs == rhs, "dynamic energy must be exactly additive");
    }
}

// ---------------------------------------------------------------------------
// Criterion 9: monitor readout semantics.
// ---------------------------------------------------------------------------
void criterion_monitor_semantics(Checker& c) {
    const CalibrationResult cal = calibrate(CalibrationTargets{});
    const Floorplan fp{2, 2, 2, false};
    const ThermalNetwork net = build_network(fp, cal.params);
    const PowerConfig cfg;

    std::vector<TpmonState> monitors;
    for (int t = 0; t < 2; ++t)
        monitors.push_back(make_tpmon(fp, t, cal.params.t_amb, cfg.step_dt_s));
    std::vector<double> temps(8, cal.params.t_amb);

    // Powers chosen so each per-tick energy increment is exactly
    // representable; 10 000 steps, readout every 100.
    const std::vector<double> power{0.5, 0.25, 1.0, 0.0, 0.125, 0.75, 0.0, 2.0};
    double readout_sum = 0.0;
    for (int step = 1; step <= 10000; ++step) {
        tick_monitors(monitors, net, temps, power, cfg);
        if (step % 100 == 0)
            for (TpmonState& st : monitors)
                for (double e : readout_local(st).energy_nj)
                    readout_sum += e;
    }
    double expected = 0.0;
    for (double p : power)
        expected += p * 1e3 * 10000.0; // nJ per tick times tick count
    c.require(readout_sum == expected, "read-and-clear must conserve energy exactly");

    bool threw = false;
    try {
        readout_local(monitors[0]);
    } catch (const DomainError&) {
        threw = true;
    }
    c.require(threw, "second readout without a tick must error");

    for (const TpmonState& st : monitors) {
        const AbstractReadout ar = readout_abstract(st, 10);
        double best = -1e300;
        for (const TileReadout& r : st.history)
            for (double t : r.temp_c) {
                c.require(ar.max_temp_c >= t, "abstract max must dominate window temps");
                best = std::max(best, t);
            }
        c.require(ar.max_temp_c == best, "abstract max must be attained by a window element");
    }
}

// ---------------------------------------------------------------------------
// Criterion 10: CLI byte determinism.
// ---------------------------------------------------------------------------
void criterion_cli_determinism(Checker& c) {
    const std::string cli = "\"" + g_cli.string() + "\"";
    const std::string scenario = (g_scenarios / "mixed_diagonal.json").string();

    const auto csv1 = g_out / "sim1.csv";
    const auto csv2 = g_out / "sim2.csv";
    const auto log1 = g_out / "sim1.log";
    const auto log2 = g_out / "sim2.log";
    const std::string sim1 = cli + " simulate --scenario \"" + scenario + "\" --out \"" +
                             csv1.string() + "\" > \"" + log1.string() + "\" 2>&1";
    const std::string sim2 = cli + " simulate --scenario \"" + scenario + "\" --out \"" +
                             csv2.string() + "\" > \"" + log2.string() + "\" 2>&1";
    c.require(run_command(sim1) == 0, "simulate run 1 failed");
    c.require(run_command(sim2) == 0, "simulate run 2 failed");
    c.require(read_bytes(csv1) == read_bytes(csv2), "simulate CSVs must be byte-identical");
    c.require(!read_bytes(csv1).empty(), "simulate CSV must not be empty");
    c.require(read_bytes(log1) == read_bytes(log2), "simulate reports must be byte-identical");

    for (const char* target : {"min-max-temp", "min-spread"}) {
        const auto alog1 = g_out / (std::string("alloc1_") + target + ".log");
        const auto alog2 = g_out / (std::string("alloc2_") + target + ".log");
        const std::string a1 = cli + " allocate --scenario \"" + scenario + "\" --target " +
                               target + " > \"" + alog1.string() + "\" 2>&1";
        const std::string a2 = cli + " allocate --scenario \"" + scenario + "\" --target " +
                               target + " > \"" + alog2.string() + "\" 2>&1";
        c.require(run_command(a1) == 0, "allocate run 1 failed");
        c.require(run_command(a2) == 0, "allocate run 2 failed");
        c.require(read_bytes(alog1) == read_bytes(alog2),
                  "allocate reports must be byte-identical");
        c.require(!read_bytes(alog1).empty(), "allocate report must not be empty");
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 4) {
        std::cerr << "usage: tpmon_acceptance <cli_path> <scenario_dir> <out_dir>\n";
        return 2;
    }
    g_cli = argv[1];
    g_scenarios = argv[2];
    g_out = argv[3];
    std::filesystem::create_directories(g_out);

    struct Criterion {
        int id;
        const char* name;
        std::function<void(Checker&)> body;
    };
    const std::vector<Criterion> criteria = {
        {1, "calibration regression with grid-search oracle", criterion_calibration},
        {2, "reference datapoint suite (47/53/51/54/47 C)", criterion_reference_datapoints},
        {3, "allocator optimality for min-max-temp", criterion_allocator_optimality},
        {4, "allocator spread target segregates tiles", criterion_allocator_spread},
        {5, "transient/steady agreement over 50 ms", criterion_transient_agreement},
        {6, "integrator first-order convergence", criterion_integrator_order},
        {7, "thermal property suite on random networks", criterion_thermal_properties},
        {8, "power accumulation oracle equivalence", criterion_power_oracle},
        {9, "monitor readout semantics", criterion_monitor_semantics},
        {10, "CLI byte determinism", criterion_cli_determinism},
    };

    int failed = 0;
    for (const Criterion& crit : criteria) {
        Checker checker;
        try {
            crit.body(checker);
        } catch (const std::exception& e) {
            checker.failures.push_back(std::string("exception: ") + e.what());
        }
        if (checker.failures.empty()) {
            std::printf("[PASS] criterion %d: %s\n", crit.id, crit.name);
        } else {
            ++failed;
            std::printf("[FAIL] criterion %d: %s\n", crit.id, crit.name);
            for (const std::string& f : checker.failures)
                std::printf("       - %s\n", f.c_str());
        }
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
