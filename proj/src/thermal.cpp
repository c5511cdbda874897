#include "tpmon/thermal.hpp"

#include "tpmon/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace tpmon {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

// Solve M*x = rhs in place, partial pivoting. M is row-major n x n and both
// arguments are clobbered.
std::vector<double> solve_dense(std::vector<double> m, std::vector<double> rhs, int n) {
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::fabs(m[static_cast<size_t>(col) * n + col]);
        for (int r = col + 1; r < n; ++r) {
            const double v = std::fabs(m[static_cast<size_t>(r) * n + col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0)
            throw NumericalError("singular conductance matrix at column " + std::to_string(col));
        if (pivot != col) {
            for (int c = col; c < n; ++c)
                std::swap(m[static_cast<size_t>(pivot) * n + c],
                          m[static_cast<size_t>(col) * n + c]);
            std::swap(rhs[pivot], rhs[col]);
        }
        const double diag = m[static_cast<size_t>(col) * n + col];
        for (int r = col + 1; r < n; ++r) {
            const double factor = m[static_cast<size_t>(r) * n + col] / diag;
            if (factor == 0.0)
                continue;
            for (int c = col; c < n; ++c)
                m[static_cast<size_t>(r) * n + c] -= factor * m[static_cast<size_t>(col) * n + c];
            rhs[r] -= factor * rhs[col];
        }
    }
    std::vector<double> x(static_cast<size_t>(n), 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double acc = rhs[r];
        for (int c = r + 1; c < n; ++c)
            acc -= m[static_cast<size_t>(r) * n + c] * x[c];
        x[r] = acc / m[static_cast<size_t>(r) * n + r];
    }
    return x;
}

void check_power_vector(const ThermalNetwork& net, const std::vector<double>& power_w) {
    if (static_cast<int>(power_w.size()) != net.n)
        throw DomainError("power vector has " + std::to_string(power_w.size()) +
                          " entries, network has " + std::to_string(net.n) + " cores");
    for (double p : power_w)
        if (!(p >= 0.0))
            throw DomainError("per-core power must be nonnegative and finite");
}

} // namespace

void validate(const ThermalParams& params) {
    if (!(params.g_amb > 0.0))
        throw DomainError("thermal params: g_amb must be > 0, got " + fmt(params.g_amb));
    if (!(params.g_lat >= 0.0))
        throw DomainError("thermal params: g_lat must be >= 0, got " + fmt(params.g_lat));
    if (!(params.g_tile >= 0.0))
        throw DomainError("thermal params: g_tile must be >= 0, got " + fmt(params.g_tile));
    if (!(params.cap > 0.0))
        throw DomainError("thermal params: cap must be > 0, got " + fmt(params.cap));
    if (!std::isfinite(params.t_amb))
        throw DomainError("thermal params: t_amb must be finite");
}

void validate(const PowerLevels& levels) {
    if (!(0.0 <= levels.p_low && levels.p_low <= levels.p_med && levels.p_med <= levels.p_high))
        throw DomainError("power levels must satisfy 0 <= low <= medium <= high (got " +
                          fmt(levels.p_low) + ", " + fmt(levels.p_med) + ", " +
                          fmt(levels.p_high) + ")");
    if (!(levels.p_idle >= 0.0))
        throw DomainError("power levels: idle must be >= 0, got " + fmt(levels.p_idle));
}

ThermalNetwork build_network(const Floorplan& fp, const ThermalParams& params) {
    validate(fp);
    validate(params);

    ThermalNetwork net;
    net.floorplan = fp;
    net.n = fp.total_cores();
    net.g_amb = params.g_amb;
    net.t_amb = params.t_amb;
    net.conductance.assign(static_cast<size_t>(net.n) * net.n, 0.0);
    net.cap.assign(static_cast<size_t>(net.n), params.cap);
    net.ambient_inj.assign(static_cast<size_t>(net.n), params.g_amb * params.t_amb);

    auto add_edge = [&](int i, int j, double g) {
        if (g == 0.0)
            return;
        net.conductance[static_cast<size_t>(i) * net.n + j] -= g;
        net.conductance[static_cast<size_t>(i) * net.n + i] += g;
    };

    for (int i = 0; i < net.n; ++i) {
        net.conductance[static_cast<size_t>(i) * net.n + i] = params.g_amb;
        const CoreId ci = core_from_flat(fp, i);
        if (params.all_to_all_intra_tile) {
            for (int j = 0; j < net.n; ++j)
                if (j != i && core_from_flat(fp, j).tile == ci.tile)
                    add_edge(i, j, params.g_lat);
            if (fp.inter_tile_coupled)
                for (int j : neighbors_flat(fp, i))
                    if (crosses_tile_boundary(ci, core_from_flat(fp, j)))
                        add_edge(i, j, params.g_tile);
        } else {
            for (int j : neighbors_flat(fp, i)) {
                const bool cross = crosses_tile_boundary(ci, core_from_flat(fp, j));
                add_edge(i, j, cross ? params.g_tile : params.g_lat);
            }
        }
    }
    return net;
}

std::vector<double> steady_state(const ThermalNetwork& net, const std::vector<double>& power_w) {
    check_power_vector(net, power_w);

    std::vector<double> rhs(static_cast<size_t>(net.n));
    for (int i = 0; i < net.n; ++i)
        rhs[i] = power_w[i] + net.ambient_inj[i];

    std::vector<double> temps = solve_dense(net.conductance, rhs, net.n);

    double rhs_max = 1.0;
    for (double v : rhs)
        rhs_max = std::max(rhs_max, std::fabs(v));
    double residual = 0.0;
    for (int i = 0; i < net.n; ++i) {
        double row = -rhs[i];
        for (int j = 0; j < net.n; ++j)
            row += net.at(i, j) * temps[j];
        residual = std::max(residual, std::fabs(row));
    }
    if (residual > 1e-9 * rhs_max)
        throw NumericalError("steady-state residual " + fmt(residual) + " exceeds tolerance");
    return temps;
}

std::vector<double> transient_step(const ThermalNetwork& net, const std::vector<double>& temps_c,
                                   const std::vector<double>& power_w, double dt_s) {
    check_power_vector(net, power_w);
    if (static_cast<int>(temps_c.size()) != net.n)
        throw DomainError("temperature vector has " + std::to_string(temps_c.size()) +
                          " entries, network has " + std::to_string(net.n) + " cores");
    const double limit = stability_limit(net);
    if (!(dt_s > 0.0) || dt_s > limit)
        throw DomainError("transient step dt " + fmt(dt_s) +
                          " s outside (0, stability limit " + fmt(limit) + " s]");

    std::vector<double> next(static_cast<size_t>(net.n));
    for (int i = 0; i < net.n; ++i) {
        double flow = power_w[i] + net.ambient_inj[i];
        const double* row = &net.conductance[static_cast<size_t>(i) * net.n];
        for (int j = 0; j < net.n; ++j)
            flow -= row[j] * temps_c[j];
        next[i] = temps_c[i] + dt_s / net.cap[i] * flow;
    }
    return next;
}

double stability_limit(const ThermalNetwork& net) {
    constexpr double safety_factor = 0.5;
    double limit = std::numeric_limits<double>::infinity();
    for (int i = 0; i < net.n; ++i)
        limit = std::min(limit, safety_factor * 2.0 * net.cap[i] / net.at(i, i));
    return limit;
}

namespace {

// Temperature rise of a 2x2 tile core carrying unit normalized power while
// its three tile-mates idle, as a function of r = g_lat / g_amb. Derived by
// symmetry-reducing the 4-node balance equations.
double single_load_coefficient(double r) {
    return (1.0 + 4.0 * r + 2.0 * r * r) / ((1.0 + 2.0 * r) * (1.0 + 4.0 * r));
}

} // namespace

CalibrationResult calibrate(const CalibrationTargets& targets, double g_amb_scale, double tau_s) {
    const double t1 = targets.single_medium;
    const double t2 = targets.medium_high_neighbors;
    const double t3 = targets.mixed_max;
    const double t4 = targets.all_high;
    const double t5 = targets.all_low;

    if (!(g_amb_scale > 0.0))
        throw DomainError("calibrate: g_amb_scale must be > 0, got " + fmt(g_amb_scale));
    if (!(tau_s > 0.0))
        throw DomainError("calibrate: tau must be > 0, got " + fmt(tau_s));
    if (!(t4 > t5))
        throw CalibrationError("inconsistent targets: all_high (" + fmt(t4) +
                               ") must exceed all_low (" + fmt(t5) + ")");
    if (!(t2 > t1))
        throw CalibrationError("inconsistent targets: medium_high_neighbors (" + fmt(t2) +
                               ") must exceed single_medium (" + fmt(t1) + ")");

    // The mixed tile has the two high cores on the diagonal, so the hot and
    // cold pairs satisfy  max + min = (p_H + p_L)/g + 2*t_amb  and
    // (max - min)*(1 + 4r) = (p_H - p_L)/g. The spread pins r.
    const double spread = 2.0 * t3 - t4 - t5;
    if (!(spread > 0.0))
        throw CalibrationError("inconsistent targets: mixed_max (" + fmt(t3) +
                               ") must exceed the uniform-tile mean (" + fmt((t4 + t5) / 2.0) +
                               ")");
    const double ratio = (t4 - t5) / spread;
    if (ratio < 1.0)
        throw CalibrationError(
            "inconsistent targets: mixed-tile spread exceeds the uniform-tile gap (requires "
            "negative coupling)");
    const double r = (ratio - 1.0) / 4.0;

    // Equating the medium power implied by the single-medium and the
    // medium-with-high-neighbors scenarios fixes t_amb.
    const double a = single_load_coefficient(r);
    if (1.0 - a < 1e-12)
        throw CalibrationError(
            "inconsistent targets: zero lateral coupling cannot raise the medium core from " +
            fmt(t1) + " to " + fmt(t2));
    const double t_amb = t4 - (t2 - t1) / (1.0 - a);

    const double q_high = t4 - t_amb;
    const double q_low = t5 - t_amb;
    const double q_med = (t1 - t_amb) / a;
    if (!(q_low >= 0.0 && q_low <= q_med && q_med <= q_high))
        throw CalibrationError("inconsistent targets: implied powers violate low <= medium <= "
                               "high >= 0 (normalized " +
                               fmt(q_low) + ", " + fmt(q_med) + ", " + fmt(q_high) + ")");

    CalibrationResult result;
    result.params.g_amb = g_amb_scale;
    result.params.g_lat = r * g_amb_scale;
    result.params.g_tile = 0.0;
    result.params.cap = g_amb_scale * tau_s;
    result.params.t_amb = t_amb;
    result.levels.p_low = q_low * g_amb_scale;
    result.levels.p_med = q_med * g_amb_scale;
    result.levels.p_high = q_high * g_amb_scale;
    result.levels.p_idle = 0.0;

    // Replay all five scenarios on one tile and record the residuals.
    const Floorplan tile{1, 2, 2, false};
    const ThermalNetwork net = build_network(tile, result.params);
    const double pl = result.levels.p_low;
    const double pm = result.levels.p_med;
    const double ph = result.levels.p_high;

    const auto max_temp = [](const std::vector<double>& temps) {
        return *std::max_element(temps.begin(), temps.end());
    };
    result.residuals = {
        std::fabs(steady_state(net, {pm, 0.0, 0.0, 0.0})[0] - t1),
        std::fabs(steady_state(net, {pm, ph, ph, ph})[0] - t2),
        std::fabs(max_temp(steady_state(net, {ph, pl, pl, ph})) - t3),
        std::fabs(max_temp(steady_state(net, {ph, ph, ph, ph})) - t4),
        std::fabs(max_temp(steady_state(net, {pl, pl, pl, pl})) - t5),
    };
    for (double res : result.residuals)
        if (!(res <= 0.05))
            throw CalibrationError("calibration residual " + fmt(res) +
                                       " degC exceeds the 0.05 degC tolerance",
                                   result.residuals);
    return result;
}

} // namespace tpmon
