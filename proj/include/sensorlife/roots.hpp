#pragma once

#include <functional>

#include "sensorlife/units.hpp"

namespace sensorlife {

struct RootSpec {
    std::function<double(double)> residual;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double tol_rel = 1e-12;
    int max_iter = 200;
    // When positive, iteration also continues until |residual| <= residual_tol
    // or the bracket collapses to adjacent doubles.
    double residual_tol = 0.0;
};

struct RootResult {
    double root = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

// Bisection with safeguarded secant steps. Throws NoSignChangeError or
// MaxIterationsError.
RootResult solve_bracketed(const RootSpec& spec);

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

// Moves the far end geometrically away from `anchor` (by `factor` per step,
// toward `direction` = +1 or -1) until the residual changes sign.
// Gives up with NoSignChangeError after 64 steps.
Bracket expand_bracket(const std::function<double(double)>& residual, double anchor, double initial_step,
                       int direction, double factor = 2.0);

// Total block time at constellation m and compressed size d_cp.
double block_time(const SystemParams& params, double m, double d_cp);

// Compressed size minimizing block time at constellation m (capped at D).
double fastest_dcp(const SystemParams& params, double m);

// Smallest compressed size deliverable within t_block at constellation m_max.
// Throws InfeasibleError when no compressed size meets the bound.
double solve_d_min(const SystemParams& params, double m_max);

struct DcpInterval {
    double lo = 0.0;
    double hi = 0.0;
};

// Compressed sizes in (0, D] meeting the delay bound at constellation m.
// Throws InfeasibleError when empty.
DcpInterval feasible_dcp_interval(const SystemParams& params, double m);

}  // namespace sensorlife
