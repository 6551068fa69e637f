#include "sensorlife/units.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sensorlife/errors.hpp"

namespace sensorlife {

SystemParams table_defaults() {
    SystemParams p;
    p.sigma2 = dbm_to_watts(-174.0);
    return p;
}

SystemParams desk_defaults() {
    SystemParams p = table_defaults();
    p.sigma2 = dbm_to_watts(-174.0) / p.t_s;
    p.d = 60.0;
    p.l_max = 12;
    p.p_t_max = 0.07;
    return p;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts * 1e3); }

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw ParameterError(std::string("invalid parameter: ") + what);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

void validate(const SystemParams& p) {
    require(std::isfinite(p.mu) && p.mu > 0.0 && p.mu <= 1.0, "mu must lie in (0, 1]");
    require(std::isfinite(p.varsigma) && p.varsigma > 0.0, "varsigma must be positive");
    require(finite_nonneg(p.p_cp), "p_cp must be nonnegative");
    require(finite_nonneg(p.p_syn), "p_syn must be nonnegative");
    require(finite_nonneg(p.p_fil), "p_fil must be nonnegative");
    require(finite_nonneg(p.p_mix), "p_mix must be nonnegative");
    require(std::isfinite(p.v_op) && p.v_op > 0.0, "v_op must be positive");
    require(std::isfinite(p.b_cap) && p.b_cap > 0.0, "b_cap must be positive");
    require(std::isfinite(p.t_s) && p.t_s > 0.0, "t_s must be positive");
    require(std::isfinite(p.omega1) && p.omega1 > 0.0, "omega1 must be positive");
    require(std::isfinite(p.omega2) && p.omega2 > 0.0, "omega2 must be positive");
    require(std::isfinite(p.d) && p.d > 0.0, "d must be positive");
    require(std::isfinite(p.sigma2) && p.sigma2 > 0.0, "sigma2 must be positive");
    require(std::isfinite(p.data_bits) && p.data_bits > 0.0, "data_bits must be positive");
    require(finite_nonneg(p.tau), "tau must be nonnegative");
    require(std::isfinite(p.beta) && p.beta > 0.0, "beta must be positive");
    require(std::isfinite(p.phi) && p.phi > 0.0, "phi must be positive");
    require(p.phi < p.omega2, "phi must be below omega2");
    require(std::isfinite(p.t_block) && p.t_block > 0.0, "t_block must be positive");
    require(std::isfinite(p.lambda) && p.lambda > 0.0, "lambda must be positive");
    require(std::isfinite(p.alpha) && p.alpha >= 0.0, "alpha must be nonnegative");
    require(p.l_max >= 1 && p.l_max <= 60, "l_max must lie in [1, 60]");
    require(finite_nonneg(p.t_sen), "t_sen must be nonnegative");
    require(finite_nonneg(p.p_sen), "p_sen must be nonnegative");
    require(p.vartheta > 0.0 && p.vartheta < 1.0, "vartheta must lie in (0, 1)");
    require(p.b_feedback >= 1 && p.b_feedback <= 16, "b_feedback must lie in [1, 16]");
    require(p.p_t_max > 0.0, "p_t_max must be positive");
}

DerivedConstants derive(const SystemParams& p) {
    validate(p);
    DerivedConstants c;
    const double ratio = p.lambda / (4.0 * std::numbers::pi);
    c.kappa = ratio * ratio;
    c.p_o = p.p_fil + p.p_mix + p.p_syn;
    c.omega_cap = p.sigma2 * std::pow(p.d, p.alpha) * std::log(p.phi / p.omega2) / (p.omega1 * c.kappa);
    c.m_max = std::ldexp(1.0, p.l_max);
    c.theta_gate = -p.varsigma * std::log(p.vartheta);
    return c;
}

}  // namespace sensorlife
