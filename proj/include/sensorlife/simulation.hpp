#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sensorlife/units.hpp"

namespace sensorlife {

enum class Scenario { s1, s2, s3, s3_gated, baseline };

std::string_view scenario_name(Scenario s);
Scenario parse_scenario(std::string_view name);  // throws ConfigError

enum class SweepVariable { phi, t_block, b_feedback, vartheta };

std::string_view sweep_variable_name(SweepVariable v);

// t_block values are milliseconds; the others are in their natural units.
struct SweepSpec {
    SweepVariable variable = SweepVariable::phi;
    std::vector<double> values;
};

// "var=lo:hi:n" (linear), "var=lo:hi:nL" (log), or "var=v1,v2,...".
SweepSpec parse_sweep(std::string_view text);

// Returns params with the swept variable set to value; throws
// ParameterError when the value is outside its legal domain.
SystemParams apply_sweep_value(const SystemParams& params, SweepVariable variable, double value);

struct SimConfig {
    Scenario scenario = Scenario::s1;
    std::int64_t blocks = 100000;
    std::uint64_t seed = 1;
    std::optional<SweepSpec> sweep;
    std::string output_path;
    int workers = 1;
    bool practical = false;  // power-of-two constellations
};

struct SweepRow {
    std::string swept_var = "none";
    double swept_value = 0.0;
    bool feasible = true;
    std::string note;

    double e_psi = 0.0;  // J
    double e_psi_stderr = 0.0;
    double lifetime_s = 0.0;
    double lifetime_days = 0.0;
    double mean_dcp_ratio = 0.0;
    double mean_rate_bps = 0.0;
    double mean_m = 0.0;
    double outage_frac = 0.0;
    std::int64_t branch_unconstrained = 0;
    std::int64_t branch_delay_active = 0;
    std::int64_t branch_clamped = 0;
    std::int64_t blocks = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

// Blocks are simulated in fixed chunks with per-chunk derived seeds, so the
// row does not depend on config.workers. A delay-infeasible point yields a
// row with feasible = false rather than an exception.
SweepRow simulate(const SimConfig& config, const SystemParams& params);

// Exact quantized-feedback expectation over the 2^b equiprobable intervals.
double expected_psi_quantized(const SystemParams& params, const DerivedConstants& derived, int b,
                              bool practical = false);

// Point i runs with seed config.seed ^ i.
SweepResult sweep(const SimConfig& config, const SystemParams& params);

std::string format_csv(const SweepResult& result);

// Throws IoError naming the path on failure.
void emit_csv(const SweepResult& result, const std::string& path);

}  // namespace sensorlife
