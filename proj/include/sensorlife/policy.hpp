#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "sensorlife/channel.hpp"
#include "sensorlife/energy.hpp"
#include "sensorlife/units.hpp"

namespace sensorlife {

enum class Branch { unconstrained, delay_active, clamped };

std::string_view branch_name(Branch b);

// The interior stationary point and, when the delay bound binds, the
// point on the delay boundary. Fields not reached are NaN.
struct StationaryPoint {
    double m_tilde = 0.0;
    double d_cp_tilde = 0.0;
    double q_time = 0.0;  // block time at the tilde point
    double m_hat = 0.0;
    double d_cp_hat = 0.0;
    double xi = 0.0;
    bool m_tilde_interior = false;  // m_tilde came from a root, not a bound
    bool m_hat_interior = false;    // m_hat came from a root, not a bound
};

struct Policy {
    bool transmit = true;  // false for a block with no usable gain information
    double m_real = 2.0;
    double d_cp = 0.0;
    double p_t = 0.0;
    Branch branch = Branch::unconstrained;
    bool feasible_power = false;
    double psi = 0.0;  // J at (m_real, d_cp, p_t)

    int m_practical = 2;
    double d_cp_practical = 0.0;
    double p_t_practical = 0.0;
    bool feasible_power_practical = false;
    double psi_practical = 0.0;

    double design_gain = 0.0;  // gain the power is sized for
    StationaryPoint stationary;
};

struct PolicyTable {
    int b = 1;
    std::vector<Policy> entries;  // entry i-1 serves quantization interval i
};

// Transmit power meeting the error target with equality at gain h2.
double prop1_power(double m, double h2, const DerivedConstants& derived);

// Transmit power meeting the error target with probability vartheta.
double prop2_power(double m, const SystemParams& params, const DerivedConstants& derived);

// Joint compression/modulation/power optimizer for power laws of the form
// p_t = (m - 1) * power_per_level. Caches the smallest feasible size.
class JointSolver {
public:
    JointSolver(const SystemParams& params, const DerivedConstants& derived);

    // Throws InfeasibleError when the delay bound cannot be met.
    Policy solve(double power_per_level, double design_gain) const;

    // Transmission-only optimizer with d_cp = D.
    Policy solve_uncompressed(double power_per_level, double design_gain) const;

    struct Choice {
        int m = 2;
        double d_cp = 0.0;
        double p_t = 0.0;
    };

    Choice practical(double m_star, double power_per_level) const;
    Choice practical_uncompressed(double m_star, double power_per_level) const;

    double d_min() const;
    const SystemParams& params() const { return params_; }
    const DerivedConstants& derived() const { return derived_; }

    // Stationarity residual in z = ln m for the interior optimum.
    double tilde_residual(double z, double power_per_level) const;
    double stationary_dcp(double m, double power_per_level) const;
    double boundary_dcp(double z, double power_per_level) const;

private:
    double amp_coeff(double power_per_level) const;
    double tilde_log_m(double power_per_level, bool& interior) const;
    double project_dcp(double m, double d_cp) const;
    void finish(Policy& policy, double power_per_level, bool uncompressed) const;

    SystemParams params_;
    DerivedConstants derived_;
    std::optional<double> d_min_;
    std::string infeasible_reason_;
};

Policy scenario1_solve(double h2, const SystemParams& params, const DerivedConstants& derived);
Policy scenario3_solve(const SystemParams& params, const DerivedConstants& derived);
Policy baseline_solve(double h2, const SystemParams& params, const DerivedConstants& derived);

int practical_modulation(double m_star, double h2, const SystemParams& params);

PolicyTable scenario2_table(const SystemParams& params, const DerivedConstants& derived, const Quantizer& q);

bool threshold_gate(double h2, const DerivedConstants& derived);

enum class PolicyFamily { joint, uncompressed };

// Energy charged to a forced outage: the costliest block the power cap
// still admits, i.e. the policy at the gain where its power meets the cap.
struct OutageModel {
    double cap_gain = 0.0;
    double psi = 0.0;
};

OutageModel outage_model(const JointSolver& solver, PolicyFamily family, bool practical);

}  // namespace sensorlife
