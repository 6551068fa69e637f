#pragma once

#include "sensorlife/units.hpp"

namespace sensorlife {

inline constexpr double delay_tolerance_s = 1e-12;

struct BlockOutcome {
    double t_cp = 0.0;   // s
    double t_tx = 0.0;   // s
    double p_tx = 0.0;   // W
    double psi = 0.0;    // J
    double ber_bound = 0.0;
    bool feasible_delay = false;
    bool feasible_power = false;
};

// Throws ParameterError unless 0 < d_cp <= D.
double compression_time(double data_bits, double d_cp, double tau, double beta);
double tau_from_mcu(double clock_hz, int reg_bits);
double tx_rate(double m, double t_s);
double tx_time(double d_cp, double m, double t_s);
double par(double m);
double tx_power_total(double p_t, double m, double p_o, double mu);
double snr(double p_t, double h2, const SystemParams& params, const DerivedConstants& derived);
double ber_bound(double m, double gamma, double omega1, double omega2);

// SNR at which the error bound equals phi.
double required_snr(double m, double phi, double omega1, double omega2);

// ber_bound is evaluated at gain h2; pass h2 = 0 for a block with no
// gain information (bound then reads omega2).
BlockOutcome psi(double m, double d_cp, double p_t, double h2, const SystemParams& params,
                 const DerivedConstants& derived);

// Throws ParameterError when sensing and block energy are both zero.
double lifetime(double expected_psi, const SystemParams& params);

}  // namespace sensorlife
