#include "sensorlife/oracle.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "sensorlife/energy.hpp"
#include "sensorlife/errors.hpp"
#include "sensorlife/parallel.hpp"
#include "sensorlife/roots.hpp"

namespace sensorlife {

namespace {

std::vector<double> axis(double lo, double hi, int n, Spacing spacing) {
    if (n < 2) throw ParameterError("grid needs at least two points per axis");
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        const double f = static_cast<double>(i) / (n - 1);
        v[i] = spacing == Spacing::log ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo)))
                                       : lo + f * (hi - lo);
    }
    v.front() = lo;
    v.back() = hi;
    return v;
}

struct RowBest {
    double psi = std::numeric_limits<double>::infinity();
    int column = -1;
    std::int64_t feasible = 0;
};

// power_of_m maps a constellation size to the transmit power the error
// constraint demands.
GridMinimum minimize(const SystemParams& p, const DerivedConstants& c, const GridSpec& grid,
                     const std::function<double(double)>& power_of_m) {
    const double d_min = solve_d_min(p, c.m_max);
    const std::vector<double> ms = axis(2.0, c.m_max, grid.m_points, grid.m_spacing);
    const std::vector<double> ds = axis(d_min, p.data_bits, grid.dcp_points, grid.dcp_spacing);

    std::vector<double> t_cp(ds.size());
    for (std::size_t j = 0; j < ds.size(); ++j) t_cp[j] = compression_time(p.data_bits, ds[j], p.tau, p.beta);

    std::vector<RowBest> rows(ms.size());
    parallel_for(ms.size(), grid.workers, [&](std::size_t i) {
        const double m = ms[i];
        const double p_t = power_of_m(m);
        if (!(p_t <= p.p_t_max)) return;
        const double time_per_bit = tx_time(1.0, m, p.t_s);
        const double p_tx = tx_power_total(p_t, m, c.p_o, p.mu);
        RowBest best;
        for (std::size_t j = 0; j < ds.size(); ++j) {
            const double t_tx = ds[j] * time_per_bit;
            if (t_cp[j] + t_tx > p.t_block + delay_tolerance_s) continue;
            ++best.feasible;
            const double e = t_cp[j] * p.p_cp + t_tx * p_tx;
            if (e < best.psi) {
                best.psi = e;
                best.column = static_cast<int>(j);
            }
        }
        rows[i] = best;
    });

    GridMinimum out;
    out.total_points = static_cast<std::int64_t>(ms.size()) * static_cast<std::int64_t>(ds.size());
    out.psi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.feasible_points += rows[i].feasible;
        if (rows[i].column >= 0 && rows[i].psi < out.psi) {
            out.psi = rows[i].psi;
            out.m = ms[i];
            out.d_cp = ds[rows[i].column];
            out.p_t = power_of_m(ms[i]);
        }
    }
    if (out.feasible_points == 0) throw EmptyFeasibleSetError("no grid point meets the delay and power limits");
    return out;
}

}  // namespace

GridMinimum grid_minimize_s1(double h2, const SystemParams& params, const DerivedConstants& derived,
                             const GridSpec& grid) {
    if (!(h2 > 0.0)) throw ParameterError("channel gain must be positive");
    const double snr_per_watt = snr(1.0, h2, params, derived);
    return minimize(params, derived, grid, [&](double m) {
        return required_snr(m, params.phi, params.omega1, params.omega2) / snr_per_watt;
    });
}

GridMinimum grid_minimize_s3(const SystemParams& params, const DerivedConstants& derived, const GridSpec& grid) {
    // P{gain >= g} = exp(-g / varsigma) = vartheta fixes the gain the power must cover.
    const double covered_gain = -params.varsigma * std::log(params.vartheta);
    const double snr_per_watt = snr(1.0, covered_gain, params, derived);
    return minimize(params, derived, grid, [&](double m) {
        return required_snr(m, params.phi, params.omega1, params.omega2) / snr_per_watt;
    });
}

}  // namespace sensorlife
