#include "sensorlife/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

#include "sensorlife/errors.hpp"

namespace sensorlife {

namespace {

double to_double(std::string_view v) {
    const std::string s(v);
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || std::isnan(x)) throw ConfigError("not a number: '" + s + "'");
    return x;
}

long long to_integer(std::string_view v) {
    const double x = to_double(v);
    if (x != std::floor(x) || std::abs(x) > 9.0e15) throw ConfigError("not an integer: '" + std::string(v) + "'");
    return static_cast<long long>(x);
}

std::uint64_t to_seed(std::string_view v) {
    const std::string s(v);
    char* end = nullptr;
    const unsigned long long x = std::strtoull(s.c_str(), &end, 0);
    if (s.empty() || s[0] == '-' || end != s.c_str() + s.size()) throw ConfigError("not a seed: '" + s + "'");
    return x;
}

bool to_bool(std::string_view v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("not a boolean: '" + std::string(v) + "'");
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Key {
    const char* section;
    const char* name;
    std::function<void(RunConfig&, std::string_view)> set;
    std::function<std::string(const RunConfig&)> get;
};

// Scaled numeric key: stored SI value = file value * scale.
Key scaled(const char* section, const char* name, double SystemParams::*field, double scale) {
    return {section, name, [=](RunConfig& c, std::string_view v) { c.params.*field = to_double(v) * scale; },
            [=](const RunConfig& c) { return fmt(c.params.*field / scale); }};
}

Key integer(const char* section, const char* name, int SystemParams::*field) {
    return {section, name, [=](RunConfig& c, std::string_view v) { c.params.*field = static_cast<int>(to_integer(v)); },
            [=](const RunConfig& c) { return std::to_string(c.params.*field); }};
}

const std::vector<Key>& keys() {
    static const std::vector<Key> table = [] {
        using P = SystemParams;
        std::vector<Key> k = {
            scaled("node", "mu", &P::mu, 1.0),
            scaled("node", "p_cp_mw", &P::p_cp, 1e-3),
            scaled("node", "p_syn_mw", &P::p_syn, 1e-3),
            scaled("node", "p_fil_mw", &P::p_fil, 1e-3),
            scaled("node", "p_mix_mw", &P::p_mix, 1e-3),
            scaled("node", "v_op_v", &P::v_op, 1.0),
            scaled("node", "b_cap_as", &P::b_cap, 1.0),
            scaled("node", "tau_ns_per_bit", &P::tau, 1e-9),
            scaled("node", "beta", &P::beta, 1.0),
            scaled("node", "t_sen_ms", &P::t_sen, 1e-3),
            scaled("node", "p_sen_mw", &P::p_sen, 1e-3),
            scaled("node", "p_t_max_mw", &P::p_t_max, 1e-3),
            scaled("link", "t_s_us", &P::t_s, 1e-6),
            scaled("link", "omega1", &P::omega1, 1.0),
            scaled("link", "omega2", &P::omega2, 1.0),
            scaled("link", "d_m", &P::d, 1.0),
            {"link", "sigma2_dbm", [](RunConfig& c, std::string_view v) { c.params.sigma2 = dbm_to_watts(to_double(v)); },
             [](const RunConfig& c) { return fmt(watts_to_dbm(c.params.sigma2)); }},
            scaled("link", "lambda_m", &P::lambda, 1.0),
            scaled("link", "alpha", &P::alpha, 1.0),
            integer("link", "l_max", &P::l_max),
            scaled("channel", "varsigma", &P::varsigma, 1.0),
            scaled("channel", "vartheta", &P::vartheta, 1.0),
            integer("channel", "b_feedback", &P::b_feedback),
            scaled("constraints", "data_kbit", &P::data_bits, 1e3),
            scaled("constraints", "phi", &P::phi, 1.0),
            scaled("constraints", "t_block_ms", &P::t_block, 1e-3),
            {"simulation", "scenario", [](RunConfig& c, std::string_view v) { c.sim.scenario = parse_scenario(v); },
             [](const RunConfig& c) { return std::string(scenario_name(c.sim.scenario)); }},
            {"simulation", "blocks", [](RunConfig& c, std::string_view v) { c.sim.blocks = to_integer(v); },
             [](const RunConfig& c) { return std::to_string(c.sim.blocks); }},
            {"simulation", "seed", [](RunConfig& c, std::string_view v) { c.sim.seed = to_seed(v); },
             [](const RunConfig& c) { return std::to_string(c.sim.seed); }},
            {"simulation", "workers", [](RunConfig& c, std::string_view v) { c.sim.workers = static_cast<int>(to_integer(v)); },
             [](const RunConfig& c) { return std::to_string(c.sim.workers); }},
            {"simulation", "practical", [](RunConfig& c, std::string_view v) { c.sim.practical = to_bool(v); },
             [](const RunConfig& c) { return std::string(c.sim.practical ? "true" : "false"); }},
            {"simulation", "grid_points", [](RunConfig& c, std::string_view v) { c.grid_points = static_cast<int>(to_integer(v)); },
             [](const RunConfig& c) { return std::to_string(c.grid_points); }},
            {"simulation", "out", [](RunConfig& c, std::string_view v) { c.sim.output_path = std::string(v); },
             [](const RunConfig& c) { return c.sim.output_path; }},
            {"simulation", "sweep", [](RunConfig& c, std::string_view v) {
                 if (v.empty()) c.sim.sweep.reset(); else c.sim.sweep = parse_sweep(v); },
             [](const RunConfig& c) {
                 if (!c.sim.sweep) return std::string();
                 std::string s = std::string(sweep_variable_name(c.sim.sweep->variable)) + "=";
                 for (std::size_t i = 0; i < c.sim.sweep->values.size(); ++i) s += (i ? "," : "") + fmt(c.sim.sweep->values[i]);
                 return s; }},
        };
        return k;
    }();
    return table;
}

const Key* find_key(std::string_view section, std::string_view name) {
    for (const Key& k : keys())
        if (section == k.section && name == k.name) return &k;
    return nullptr;
}

bool known_section(std::string_view section) {
    for (const Key& k : keys())
        if (section == k.section) return true;
    return false;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

void check(const RunConfig& c) {
    validate(c.params);
    if (c.sim.blocks < 1) throw ConfigError("blocks must be at least 1");
    if (c.sim.workers < 1) throw ConfigError("workers must be at least 1");
    if (c.grid_points < 2) throw ConfigError("grid_points must be at least 2");
}

}  // namespace

RunConfig preset_config(std::string_view name) {
    RunConfig c;
    if (name == "defaults") {
        c.params = table_defaults();
    } else if (name == "desk") {
        c.params = desk_defaults();
    } else {
        throw ConfigError("unknown preset '" + std::string(name) + "' (expected defaults or desk)");
    }
    return c;
}

RunConfig parse_config(std::string_view text, const std::string& origin) {
    RunConfig config = preset_config("defaults");
    std::string section;
    std::set<std::string> seen;
    int line_no = 0;
    bool any_key = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const std::string where = origin + ":" + std::to_string(line_no);

        const auto comment = line.find_first_of("#;");
        if (comment != std::string_view::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + ": malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (!known_section(section)) throw ConfigError(where + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where + ": expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));

        if (section.empty()) {
            if (key != "preset") throw ConfigError(where + ": key '" + key + "' outside any section");
            if (any_key) throw ConfigError(where + ": preset must precede every other key");
            config = preset_config(value);
            any_key = true;
            continue;
        }
        const Key* k = find_key(section, key);
        if (!k) throw ConfigError(where + ": unknown key '" + key + "' in [" + section + "]");
        if (!seen.insert(section + "." + key).second) throw ConfigError(where + ": repeated key '" + key + "'");
        try {
            k->set(config, value);
        } catch (const Error& e) {
            throw ConfigError(where + ": " + e.what());
        }
        any_key = true;
    }
    try {
        check(config);
    } catch (const ParameterError& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    return config;
}

RunConfig load_config(const std::string& source) {
    if (source == "defaults" || source == "desk") return preset_config(source);
    std::ifstream f(source, std::ios::binary);
    if (!f) throw ConfigError("cannot read config file '" + source + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), source);
}

void apply_override(RunConfig& config, std::string_view assignment) {
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string_view::npos || dot == std::string_view::npos || dot > eq)
        throw ConfigError("override must look like section.key=value, got '" + std::string(assignment) + "'");
    const std::string_view section = trim(assignment.substr(0, dot));
    const std::string_view key = trim(assignment.substr(dot + 1, eq - dot - 1));
    const Key* k = find_key(section, key);
    if (!k) throw ConfigError("unknown setting '" + std::string(section) + "." + std::string(key) + "'");
    try {
        k->set(config, trim(assignment.substr(eq + 1)));
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

std::string format_config(const RunConfig& config) {
    std::string out;
    std::string section;
    for (const Key& k : keys()) {
        if (section != k.section) {
            section = k.section;
            out += (out.empty() ? "[" : "\n[") + section + "]\n";
        }
        out += std::string(k.name) + " = " + k.get(config) + "\n";
    }
    return out;
}

}  // namespace sensorlife
