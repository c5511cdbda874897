#ifndef TPMON_THERMAL_HPP
#define TPMON_THERMAL_HPP

#include "tpmon/topology.hpp"

#include <utility>
#include <vector>

namespace tpmon {

// Lumped RC parameters, one node per core. Conductances in W/degC,
// capacitance in J/degC, temperatures in degC.
struct ThermalParams {
    double g_amb = 0.1;   // core -> ambient, uniform per core; must be > 0
    double g_lat = 0.15;  // between 4-adjacent cores of the same tile
    double g_tile = 0.0;  // across a tile boundary (only with inter_tile_coupled)
    double cap = 5e-4;    // per-core thermal capacitance; must be > 0
    double t_amb = 45.0;  // ambient / reference temperature
    // Couples every intra-tile core pair with g_lat instead of 4-adjacency.
    bool all_to_all_intra_tile = false;
};

void validate(const ThermalParams& params);

// Assembled network: symmetric conductance matrix A (row-major n x n) with
//   A_ii = g_amb + sum of incident lateral conductances, A_ij = -g_ij,
// per-core capacitances, and ambient injection b_i = g_amb * t_amb.
// A is strictly diagonally dominant, hence nonsingular.
struct ThermalNetwork {
    Floorplan floorplan;
    int n = 0;
    std::vector<double> conductance; // n*n, row-major
    std::vector<double> cap;         // n
    std::vector<double> ambient_inj; // n, g_amb * t_amb
    double g_amb = 0.0;
    double t_amb = 0.0;

    double at(int i, int j) const { return conductance[static_cast<size_t>(i) * n + j]; }
};

ThermalNetwork build_network(const Floorplan& fp, const ThermalParams& params);

// Solves A*T = P + b by partial-pivot Gaussian elimination and checks the
// residual:  ||A*T - P - b||_inf <= 1e-9 * max(1, ||P + b||_inf).
std::vector<double> steady_state(const ThermalNetwork& net, const std::vector<double>& power_w);

// One explicit-Euler step: T'_i = T_i + (dt / cap_i) * (P_i - (A*T)_i + b_i).
// dt above stability_limit(net) is refused with DomainError.
std::vector<double> transient_step(const ThermalNetwork& net, const std::vector<double>& temps_c,
                                   const std::vector<double>& power_w, double dt_s);

// 0.5 * min_i (2 * cap_i / A_ii): half the shortest nodal time constant.
double stability_limit(const ThermalNetwork& net);

// Steady power drawn by a core running a task of the given class, W.
struct PowerLevels {
    double p_low = 0.0;
    double p_med = 0.0;
    double p_high = 0.0;
    double p_idle = 0.0;
};

void validate(const PowerLevels& levels);

// Reference steady temperatures used as calibration targets, degC.
struct CalibrationTargets {
    double single_medium = 47.0;        // one medium core active, rest idle
    double medium_high_neighbors = 53.0; // same core with all tile-mates at high power
    double mixed_max = 51.0;            // 2 high + 2 low per tile, hottest core
    double all_high = 54.0;             // uniform highest-power tile
    double all_low = 47.0;              // uniform lowest-power tile
};

struct CalibrationResult {
    ThermalParams params;
    PowerLevels levels;
    // Per-target |model - target| in the order single_medium,
    // medium_high_neighbors, mixed_max, all_high, all_low.
    std::vector<double> residuals;
};

// Fits t_amb, the lateral/ambient conductance ratio, and the three power
// levels so that one 2x2 tile reproduces all five targets at steady state.
// The targets determine only ratios; g_amb_scale fixes the conductance scale
// and tau sets cap = g_amb_scale * tau. Throws CalibrationError when the
// targets are inconsistent or any residual exceeds 0.05 degC.
CalibrationResult calibrate(const CalibrationTargets& targets, double g_amb_scale = 0.1,
                            double tau_s = 5e-3);

} // namespace tpmon

#endif
