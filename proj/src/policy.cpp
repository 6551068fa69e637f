#include "sensorlife/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sensorlife/errors.hpp"
#include "sensorlife/roots.hpp"

namespace sensorlife {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr double ln2 = std::numbers::ln2;

}  // namespace

std::string_view branch_name(Branch b) {
    switch (b) {
        case Branch::unconstrained: return "unconstrained";
        case Branch::delay_active: return "delay_active";
        case Branch::clamped: return "clamped";
    }
    return "unknown";
}

double prop1_power(double m, double h2, const DerivedConstants& derived) {
    if (!(h2 > 0.0)) throw ParameterError("channel gain must be positive to size transmit power");
    return (1.0 - m) * derived.omega_cap / h2;
}

double prop2_power(double m, const SystemParams& params, const DerivedConstants& derived) {
    return (m - 1.0) * derived.omega_cap / (params.varsigma * std::log(params.vartheta));
}

JointSolver::JointSolver(const SystemParams& params, const DerivedConstants& derived)
    : params_(params), derived_(derived) {
    validate(params_);
    if (params_.tau <= 0.0) {
        infeasible_reason_ = "compression with zero per-bit time has no finite optimum";
        return;
    }
    try {
        d_min_ = solve_d_min(params_, derived_.m_max);
    } catch (const InfeasibleError& e) {
        infeasible_reason_ = e.what();
    }
}

double JointSolver::d_min() const {
    if (!d_min_) throw InfeasibleError(infeasible_reason_);
    return *d_min_;
}

double JointSolver::amp_coeff(double k) const { return 3.0 * k / params_.mu; }

double JointSolver::tilde_residual(double z, double k) const {
    const double a = amp_coeff(k);
    const double r = std::exp(0.5 * z);
    return a * (r - 1.0) * ((z - 1.0) * r + 1.0) - derived_.p_o;
}

double JointSolver::tilde_log_m(double k, bool& interior) const {
    const double z_lo = std::log(2.0) + 1e-9;
    const double z_hi = std::log(derived_.m_max);
    interior = false;
    if (z_hi <= z_lo || tilde_residual(z_lo, k) >= 0.0) return std::log(2.0);
    if (tilde_residual(z_hi, k) <= 0.0) return z_hi;
    RootSpec spec{[&](double z) { return tilde_residual(z, k); }, z_lo, z_hi};
    spec.residual_tol = 1e-13 * derived_.p_o;
    interior = true;
    return solve_bracketed(spec).root;
}

double JointSolver::stationary_dcp(double m, double k) const {
    const double a = amp_coeff(k);
    const double r = std::sqrt(m);
    const double energy_per_bit = params_.t_s * ln2 * (a * (r - 1.0) * (r - 1.0) + derived_.p_o) / std::log(m);
    const double ratio = params_.beta * params_.tau * params_.p_cp / energy_per_bit;
    return params_.data_bits * std::min(1.0, std::pow(ratio, 1.0 / (params_.beta + 1.0)));
}

double JointSolver::boundary_dcp(double z, double k) const {
    const double a = amp_coeff(k);
    const double r = std::exp(0.5 * z);
    const double h = a * (r - 1.0) * ((z - 1.0) * r + 1.0);
    const double xi = params_.beta * params_.tau * (params_.p_cp + h - derived_.p_o) /
                      (params_.t_s * ln2 * a * r * (r - 1.0));
    const double lo = d_min();
    if (!(xi > 0.0)) return lo;
    return std::clamp(params_.data_bits * std::pow(xi, 1.0 / (params_.beta + 1.0)), lo, params_.data_bits);
}

double JointSolver::project_dcp(double m, double d_cp) const {
    const DcpInterval iv = feasible_dcp_interval(params_, m);
    const double lo = std::max(iv.lo, d_min());
    return std::clamp(d_cp, lo, std::max(lo, iv.hi));
}

void JointSolver::finish(Policy& policy, double k, bool uncompressed) const {
    policy.p_t = (policy.m_real - 1.0) * k;
    policy.feasible_power = policy.p_t <= params_.p_t_max;
    policy.psi = psi(policy.m_real, policy.d_cp, policy.p_t, policy.design_gain, params_, derived_).psi;

    const Choice c = uncompressed ? practical_uncompressed(policy.m_real, k) : practical(policy.m_real, k);
    policy.m_practical = c.m;
    policy.d_cp_practical = c.d_cp;
    policy.p_t_practical = c.p_t;
    policy.feasible_power_practical = c.p_t <= params_.p_t_max;
    policy.psi_practical = psi(c.m, c.d_cp, c.p_t, policy.design_gain, params_, derived_).psi;
}

Policy JointSolver::solve(double k, double design_gain) const {
    d_min();  // throws when the delay bound is unmeetable
    const double t_max = params_.t_block;
    const double z_hi = std::log(derived_.m_max);

    Policy policy;
    policy.design_gain = design_gain;
    StationaryPoint& sp = policy.stationary;
    sp.m_hat = sp.d_cp_hat = sp.xi = nan;

    bool interior = false;
    const double z_tilde = tilde_log_m(k, interior);
    const bool at_top = !interior && z_tilde >= z_hi;
    sp.m_tilde = interior ? std::exp(z_tilde) : (at_top ? derived_.m_max : 2.0);
    sp.m_tilde_interior = interior;
    sp.d_cp_tilde = stationary_dcp(sp.m_tilde, k);
    sp.q_time = sp.d_cp_tilde > 0.0 ? block_time(params_, sp.m_tilde, sp.d_cp_tilde)
                                    : std::numeric_limits<double>::infinity();

    if (sp.q_time <= t_max) {
        policy.m_real = sp.m_tilde;
        policy.d_cp = sp.d_cp_tilde;
        policy.branch = interior && sp.d_cp_tilde < params_.data_bits ? Branch::unconstrained : Branch::clamped;
        finish(policy, k, false);
        return policy;
    }

    if (at_top) {
        policy.m_real = derived_.m_max;
        policy.d_cp = project_dcp(derived_.m_max, sp.d_cp_tilde);
    } else {
        const double z_lo = std::log(sp.m_tilde);
        auto residual = [&](double z) { return block_time(params_, std::exp(z), boundary_dcp(z, k)) - t_max; };
        if (residual(z_lo) <= 0.0) {
            policy.m_real = sp.m_tilde;
            policy.d_cp = project_dcp(sp.m_tilde, sp.d_cp_tilde);
        } else if (residual(z_hi) > 0.0) {
            policy.m_real = derived_.m_max;
            policy.d_cp = project_dcp(derived_.m_max, stationary_dcp(derived_.m_max, k));
        } else {
            RootSpec spec{residual, z_lo, z_hi};
            spec.residual_tol = 1e-13 * t_max;
            const double z = solve_bracketed(spec).root;
            policy.m_real = std::exp(z);
            policy.d_cp = boundary_dcp(z, k);
            sp.m_hat_interior = true;
            const double a = amp_coeff(k);
            const double r = std::exp(0.5 * z);
            sp.xi = params_.beta * params_.tau * (params_.p_cp + a * (r - 1.0) * ((z - 1.0) * r + 1.0) - derived_.p_o) /
                    (params_.t_s * ln2 * a * r * (r - 1.0));
        }
    }
    sp.m_hat = policy.m_real;
    sp.d_cp_hat = policy.d_cp;
    const double t = block_time(params_, policy.m_real, policy.d_cp);
    policy.branch = std::abs(t - t_max) <= 1e-9 * t_max ? Branch::delay_active : Branch::clamped;
    finish(policy, k, false);
    return policy;
}

Policy JointSolver::solve_uncompressed(double k, double design_gain) const {
    const double data = params_.data_bits;
    const double t_max = params_.t_block;

    Policy policy;
    policy.design_gain = design_gain;
    policy.d_cp = data;
    StationaryPoint& sp = policy.stationary;
    sp.m_hat = sp.d_cp_hat = sp.xi = nan;

    bool interior = false;
    const double z_tilde = tilde_log_m(k, interior);
    sp.m_tilde = interior ? std::exp(z_tilde) : (z_tilde >= std::log(derived_.m_max) ? derived_.m_max : 2.0);
    sp.m_tilde_interior = interior;
    sp.d_cp_tilde = data;
    sp.q_time = tx_time(data, sp.m_tilde, params_.t_s);

    if (sp.q_time < t_max) {
        policy.m_real = sp.m_tilde;
        policy.branch = interior ? Branch::unconstrained : Branch::clamped;
    } else {
        const double required = std::exp(data * params_.t_s * ln2 / t_max);
        if (required > derived_.m_max * (1.0 + 1e-12))
            throw InfeasibleError("uncompressed delivery within " + short_number(t_max * 1e3) +
                                  " ms needs constellation " + short_number(required) + " above the cap " +
                                  short_number(derived_.m_max));
        policy.m_real = std::min(required, derived_.m_max);
        policy.branch = Branch::delay_active;
        sp.m_hat = policy.m_real;
        sp.d_cp_hat = data;
    }
    finish(policy, k, true);
    return policy;
}

namespace {

struct Neighbours {
    double lower;
    double upper;
};

Neighbours power_of_two_neighbours(double m_star, double m_max) {
    const double l = std::log2(m_star);
    const double nearest = std::round(l);
    if (std::abs(l - nearest) < 1e-12) {
        const double v = std::min(std::ldexp(1.0, static_cast<int>(nearest)), m_max);
        return {v, v};
    }
    return {std::min(std::ldexp(1.0, static_cast<int>(std::floor(l))), m_max),
            std::min(std::ldexp(1.0, static_cast<int>(std::ceil(l))), m_max)};
}

}  // namespace

JointSolver::Choice JointSolver::practical(double m_star, double k) const {
    m_star = std::clamp(m_star, 2.0, derived_.m_max);
    const auto [nu1, nu2] = power_of_two_neighbours(m_star, derived_.m_max);
    const double d_nu1 = std::clamp(stationary_dcp(nu1, k), d_min(), params_.data_bits);
    if (std::abs(m_star - nu1) <= std::abs(m_star - nu2) && block_time(params_, nu1, d_nu1) < params_.t_block)
        return {static_cast<int>(nu1), d_nu1, (nu1 - 1.0) * k};
    return {static_cast<int>(nu2), project_dcp(nu2, stationary_dcp(nu2, k)), (nu2 - 1.0) * k};
}

JointSolver::Choice JointSolver::practical_uncompressed(double m_star, double k) const {
    m_star = std::clamp(m_star, 2.0, derived_.m_max);
    const auto [nu1, nu2] = power_of_two_neighbours(m_star, derived_.m_max);
    const double data = params_.data_bits;
    if (std::abs(m_star - nu1) <= std::abs(m_star - nu2) && tx_time(data, nu1, params_.t_s) < params_.t_block)
        return {static_cast<int>(nu1), data, (nu1 - 1.0) * k};
    return {static_cast<int>(nu2), data, (nu2 - 1.0) * k};
}

Policy scenario1_solve(double h2, const SystemParams& params, const DerivedConstants& derived) {
    const double k = prop1_power(2.0, h2, derived);
    return JointSolver(params, derived).solve(k, h2);
}

Policy scenario3_solve(const SystemParams& params, const DerivedConstants& derived) {
    const double k = prop2_power(2.0, params, derived);
    return JointSolver(params, derived).solve(k, derived.theta_gate);
}

Policy baseline_solve(double h2, const SystemParams& params, const DerivedConstants& derived) {
    const double k = prop1_power(2.0, h2, derived);
    return JointSolver(params, derived).solve_uncompressed(k, h2);
}

int practical_modulation(double m_star, double h2, const SystemParams& params) {
    const DerivedConstants derived = derive(params);
    return JointSolver(params, derived).practical(m_star, prop1_power(2.0, h2, derived)).m;
}

namespace {

Policy no_gain_policy(const SystemParams& params) {
    Policy p;
    p.transmit = false;
    p.d_cp = p.d_cp_practical = params.data_bits;
    p.p_t = p.p_t_practical = std::numeric_limits<double>::infinity();
    p.branch = Branch::clamped;
    p.stationary.m_tilde = p.stationary.d_cp_tilde = p.stationary.q_time = nan;
    p.stationary.m_hat = p.stationary.d_cp_hat = p.stationary.xi = nan;
    return p;
}

}  // namespace

PolicyTable scenario2_table(const SystemParams& params, const DerivedConstants& derived, const Quantizer& q) {
    const JointSolver solver(params, derived);
    PolicyTable table;
    table.b = q.b;
    table.entries.reserve(q.intervals());
    for (int i = 0; i < q.intervals(); ++i) {
        const double c = q.levels[i];
        if (c <= 0.0)
            table.entries.push_back(no_gain_policy(params));
        else
            table.entries.push_back(solver.solve(prop1_power(2.0, c, derived), c));
    }
    return table;
}

bool threshold_gate(double h2, const DerivedConstants& derived) { return h2 > derived.theta_gate; }

OutageModel outage_model(const JointSolver& solver, PolicyFamily family, bool practical) {
    const DerivedConstants& derived = solver.derived();
    const double cap = solver.params().p_t_max;
    auto at = [&](double h2) {
        const double k = prop1_power(2.0, h2, derived);
        return family == PolicyFamily::joint ? solver.solve(k, h2) : solver.solve_uncompressed(k, h2);
    };
    auto fits = [&](const Policy& p) { return (practical ? p.p_t_practical : p.p_t) <= cap; };

    // Required power scales as 1/h2, so a fitting gain exists above any non-fitting one.
    double hi = 1.0;
    int steps = 0;
    while (!fits(at(hi))) {
        hi *= 2.0;
        if (++steps > 2000) throw InfeasibleError("transmit power cap is unreachable at any gain");
    }
    double lo = hi;
    steps = 0;
    while (fits(at(lo))) {
        lo *= 0.5;
        if (++steps > 2000) {
            const Policy p = at(hi);
            return {0.0, practical ? p.psi_practical : p.psi};
        }
    }
    for (int i = 0; i < 80 && hi > lo * (1.0 + 1e-14); ++i) {
        const double mid = std::sqrt(lo * hi);
        if (fits(at(mid)))
            hi = mid;
        else
            lo = mid;
    }
    const Policy p = at(hi);
    return {hi, practical ? p.psi_practical : p.psi};
}

}  // namespace sensorlife
