#pragma once

namespace sensorlife {

// Every quantity is in SI base units; conversions happen only in config.
struct SystemParams {
    double mu = 0.35;           // amplifier drain efficiency
    double varsigma = 1.0;      // mean channel power gain
    double p_cp = 0.024;        // W, compression
    double p_syn = 0.050;       // W
    double p_fil = 0.0025;      // W
    double p_mix = 0.0303;      // W
    double v_op = 3.0;          // V
    double b_cap = 9000.0;      // A*s
    double t_s = 16e-6;         // s, symbol period
    double omega1 = 1.5;
    double omega2 = 0.2;
    double d = 20.0;            // m
    double sigma2 = 3.9810717055349565e-21;  // W
    double data_bits = 20000.0;
    double tau = 0.35e-9;       // s/bit
    double beta = 5.0;
    double phi = 1e-3;          // target bit error rate
    double t_block = 0.05;      // s, delay bound
    double lambda = 0.125;      // m, carrier wavelength
    double alpha = 3.5;         // path-loss exponent
    int l_max = 10;             // largest constellation is 2^l_max
    double t_sen = 0.0;         // s
    double p_sen = 0.0;         // W
    double vartheta = 0.9;      // required probability of meeting the error target
    int b_feedback = 6;
    double p_t_max = 0.1;       // W, transmit power cap

    bool operator==(const SystemParams&) const = default;
};

struct DerivedConstants {
    double kappa = 0.0;
    double p_o = 0.0;        // W, circuit power of the transmit chain
    double omega_cap = 0.0;  // W, negative
    double m_max = 0.0;
    double theta_gate = 0.0;

    bool operator==(const DerivedConstants&) const = default;
};

SystemParams table_defaults();

// Table defaults with the noise read as a per-hertz density over 1/t_s,
// a longer link and a tighter power cap, so transmit power matters.
SystemParams desk_defaults();

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// Throws ParameterError naming the first violated invariant.
void validate(const SystemParams& params);

DerivedConstants derive(const SystemParams& params);

}  // namespace sensorlife
