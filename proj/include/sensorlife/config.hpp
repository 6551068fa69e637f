#pragma once

#include <string>
#include <string_view>

#include "sensorlife/simulation.hpp"
#include "sensorlife/units.hpp"

namespace sensorlife {

struct RunConfig {
    SystemParams params = table_defaults();
    SimConfig sim;
    int grid_points = 2000;
};

// "defaults" (table values) or "desk"; throws ConfigError otherwise.
RunConfig preset_config(std::string_view name);

// INI text: `[section]` headers, `key = value` lines, `#` or `;` comments.
// An optional `preset = defaults|desk` line may precede every other key.
// Unknown sections or keys, repeated keys and malformed values throw
// ConfigError citing `origin:line`.
RunConfig parse_config(std::string_view text, const std::string& origin);

// A preset name or a file path.
RunConfig load_config(const std::string& source);

// `section.key=value`, as accepted by the CLI's --set.
void apply_override(RunConfig& config, std::string_view assignment);

// Renders every key in config units; parsing it back reproduces c up to one
// rounding per unit conversion.
std::string format_config(const RunConfig& config);

}  // namespace sensorlife
