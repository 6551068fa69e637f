#include "sensorlife/roots.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sensorlife/energy.hpp"
#include "sensorlife/errors.hpp"

namespace sensorlife {

namespace {

bool opposite_or_zero(double a, double b) { return (a <= 0.0 && b >= 0.0) || (a >= 0.0 && b <= 0.0); }

}  // namespace

RootResult solve_bracketed(const RootSpec& spec) {
    double a = spec.bracket_lo;
    double b = spec.bracket_hi;
    if (a > b) std::swap(a, b);
    double fa = spec.residual(a);
    double fb = spec.residual(b);
    if (std::isnan(fa) || std::isnan(fb) || !opposite_or_zero(fa, fb))
        throw NoSignChangeError("residual does not change sign on [" + short_number(a) + ", " +
                                short_number(b) + "]");
    if (fa == 0.0) return {a, 0.0, 0};
    if (fb == 0.0) return {b, 0.0, 0};

    double width_before = b - a;
    bool bisect_next = false;
    for (int it = 1; it <= spec.max_iter; ++it) {
        double x;
        const double mid = a + 0.5 * (b - a);
        if (bisect_next) {
            x = mid;
        } else {
            x = b - fb * (b - a) / (fb - fa);
            if (!(x > a && x < b)) x = mid;
        }
        const double fx = spec.residual(x);
        if (std::isnan(fx)) throw RootError("residual is NaN at " + short_number(x));
        if (fx == 0.0) return {x, 0.0, it};
        if (opposite_or_zero(fa, fx)) {
            b = x;
            fb = fx;
        } else {
            a = x;
            fa = fx;
        }
        const double width = b - a;
        // Secant steps must at least halve the bracket every other step.
        bisect_next = !bisect_next && width > 0.5 * width_before;
        width_before = width;

        const double best = std::abs(fa) <= std::abs(fb) ? a : b;
        const double fbest = std::abs(fa) <= std::abs(fb) ? fa : fb;
        const bool collapsed = std::nextafter(a, b) >= b;
        const bool narrow = width <= spec.tol_rel * std::max(std::abs(a), std::abs(b)) || collapsed;
        const bool small_residual = spec.residual_tol <= 0.0 || std::abs(fbest) <= spec.residual_tol || collapsed;
        if (narrow && small_residual) return {best, fbest, it};
    }
    throw MaxIterationsError("root not converged within " + std::to_string(spec.max_iter) + " iterations");
}

Bracket expand_bracket(const std::function<double(double)>& residual, double anchor, double initial_step,
                       int direction, double factor) {
    const double f0 = residual(anchor);
    double step = initial_step;
    for (int k = 0; k < 64; ++k) {
        const double x = anchor + direction * step;
        const double fx = residual(x);
        if (opposite_or_zero(f0, fx)) return direction > 0 ? Bracket{anchor, x} : Bracket{x, anchor};
        step *= factor;
    }
    throw NoSignChangeError("bracket expansion found no sign change within 64 steps");
}

double block_time(const SystemParams& p, double m, double d_cp) {
    return compression_time(p.data_bits, d_cp, p.tau, p.beta) + tx_time(d_cp, m, p.t_s);
}

double fastest_dcp(const SystemParams& p, double m) {
    // d/dx [tau D^(b+1) x^-b + x t_s / log2 m] = 0
    const double x = p.data_bits * std::pow(std::log2(m) * p.beta * p.tau / p.t_s, 1.0 / (p.beta + 1.0));
    return std::min(p.data_bits, x);
}

namespace {

double time_scale_tol(const SystemParams& p) { return 1e-13 * p.t_block; }

// Lower root of the convex block time on (0, x_fast], given time(x_fast) <= T.
double lower_time_root(const SystemParams& p, double m, double x_fast) {
    auto r = [&](double x) { return block_time(p, m, x) - p.t_block; };
    double lo = x_fast;
    int halvings = 0;
    while (r(lo) <= 0.0) {
        lo *= 0.5;
        if (++halvings > 1100) return 0.0;
    }
    if (halvings == 0) return x_fast;
    RootSpec spec{r, lo, lo * 2.0};
    spec.residual_tol = time_scale_tol(p);
    return solve_bracketed(spec).root;
}

}  // namespace

double solve_d_min(const SystemParams& p, double m_max) {
    const double x_fast = fastest_dcp(p, m_max);
    const double t_fast = block_time(p, m_max, x_fast);
    if (t_fast > p.t_block)
        throw InfeasibleError("delay bound " + short_number(p.t_block * 1e3) +
                              " ms is unreachable at any compression level (fastest block takes " +
                              short_number(t_fast * 1e3) + " ms)");
    return lower_time_root(p, m_max, x_fast);
}

DcpInterval feasible_dcp_interval(const SystemParams& p, double m) {
    const double x_fast = fastest_dcp(p, m);
    if (block_time(p, m, x_fast) > p.t_block)
        throw InfeasibleError("no compressed size meets the delay bound at constellation " + short_number(m));
    DcpInterval out;
    out.lo = lower_time_root(p, m, x_fast);
    auto r = [&](double x) { return block_time(p, m, x) - p.t_block; };
    if (r(p.data_bits) <= 0.0) {
        out.hi = p.data_bits;
    } else {
        RootSpec spec{r, x_fast, p.data_bits};
        spec.residual_tol = time_scale_tol(p);
        out.hi = solve_bracketed(spec).root;
    }
    return out;
}

}  // namespace sensorlife
