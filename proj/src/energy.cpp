#include "sensorlife/energy.hpp"

#include <cmath>

#include "sensorlife/errors.hpp"

namespace sensorlife {

double compression_time(double data_bits, double d_cp, double tau, double beta) {
    if (!(d_cp > 0.0) || d_cp > data_bits)
        throw ParameterError("compressed size must lie in (0, D]");
    return tau * data_bits * (std::pow(data_bits / d_cp, beta) - 1.0);
}

double tau_from_mcu(double clock_hz, int reg_bits) {
    if (!(clock_hz > 0.0) || reg_bits < 1) throw ParameterError("clock and register width must be positive");
    constexpr double instructions_per_bit_group = 1.0;
    constexpr double clocks_per_instruction = 1.0;
    return instructions_per_bit_group * clocks_per_instruction / clock_hz / reg_bits;
}

double tx_rate(double m, double t_s) { return std::log2(m) / t_s; }

double tx_time(double d_cp, double m, double t_s) { return d_cp / tx_rate(m, t_s); }

double par(double m) {
    const double r = std::sqrt(m);
    return 3.0 * (r - 1.0) / (r + 1.0);
}

double tx_power_total(double p_t, double m, double p_o, double mu) { return par(m) / mu * p_t + p_o; }

double snr(double p_t, double h2, const SystemParams& params, const DerivedConstants& derived) {
    return derived.kappa * p_t * h2 / (params.sigma2 * std::pow(params.d, params.alpha));
}

double ber_bound(double m, double gamma, double omega1, double omega2) {
    return omega2 * std::exp(-omega1 * gamma / (m - 1.0));
}

double required_snr(double m, double phi, double omega1, double omega2) {
    return (m - 1.0) * std::log(omega2 / phi) / omega1;
}

BlockOutcome psi(double m, double d_cp, double p_t, double h2, const SystemParams& params,
                 const DerivedConstants& derived) {
    BlockOutcome out;
    out.t_cp = compression_time(params.data_bits, d_cp, params.tau, params.beta);
    out.t_tx = tx_time(d_cp, m, params.t_s);
    out.p_tx = tx_power_total(p_t, m, derived.p_o, params.mu);
    out.psi = out.t_cp * params.p_cp + out.t_tx * out.p_tx;
    out.ber_bound = ber_bound(m, snr(p_t, h2, params, derived), params.omega1, params.omega2);
    out.feasible_delay = out.t_cp + out.t_tx <= params.t_block + delay_tolerance_s;
    out.feasible_power = p_t <= params.p_t_max;
    return out;
}

double lifetime(double expected_psi, const SystemParams& params) {
    if (!(expected_psi >= 0.0)) throw ParameterError("expected block energy must be nonnegative");
    const double per_block = params.t_sen * params.p_sen + expected_psi;
    if (per_block <= 0.0) throw ParameterError("average power is zero; lifetime is unbounded");
    return params.b_cap * params.v_op / (per_block / params.t_block);
}

}  // namespace sensorlife
