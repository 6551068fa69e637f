#include "sensorlife/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>

#include "sensorlife/config.hpp"
#include "sensorlife/errors.hpp"
#include "sensorlife/oracle.hpp"
#include "sensorlife/policy.hpp"
#include "sensorlife/simulation.hpp"

namespace sensorlife {

namespace {

constexpr double oracle_tolerance = 0.005;

struct Flags {
    std::string config = "defaults";
    std::vector<std::string> overrides;
    std::string scenario;
    std::uint64_t seed = 0;
    std::int64_t blocks = 0;
    std::string out;
    int grid_points = 0;
    int workers = 0;
    double t_block_ms = 0.0;
    double phi = 0.0;
    double vartheta = 0.0;
    int b_feedback = 0;
    double gain = 1.0;
    int interval = 0;
    std::string sweep;
    bool practical = false;
};

struct Options {
    std::map<std::string, CLI::Option*> by_name;
    bool given(const std::string& name) const {
        auto it = by_name.find(name);
        return it != by_name.end() && it->second->count() > 0;
    }
};

Options add_flags(CLI::App* sub, Flags& f) {
    Options o;
    o.by_name["config"] = sub->add_option("--config", f.config, "config file path, or the preset 'defaults' or 'desk'");
    o.by_name["set"] = sub->add_option("--set", f.overrides, "section.key=value override (repeatable)");
    o.by_name["scenario"] = sub->add_option("--scenario", f.scenario, "s1, s2, s3, s3_gated or baseline");
    o.by_name["seed"] = sub->add_option("--seed", f.seed, "64-bit seed");
    o.by_name["blocks"] = sub->add_option("--blocks", f.blocks, "Monte Carlo blocks per point");
    o.by_name["out"] = sub->add_option("--out", f.out, "output CSV path ('-' for stdout)");
    o.by_name["grid-points"] = sub->add_option("--grid-points", f.grid_points, "oracle points per axis");
    o.by_name["workers"] = sub->add_option("--workers", f.workers, "worker threads");
    o.by_name["t-block-ms"] = sub->add_option("--t-block-ms", f.t_block_ms, "delay bound in ms");
    o.by_name["phi"] = sub->add_option("--phi", f.phi, "target bit error rate");
    o.by_name["vartheta"] = sub->add_option("--vartheta", f.vartheta, "probability of meeting the error target");
    o.by_name["b-feedback"] = sub->add_option("--b-feedback", f.b_feedback, "feedback bits");
    o.by_name["gain"] = sub->add_option("--gain", f.gain, "channel power gain");
    o.by_name["interval"] = sub->add_option("--interval", f.interval, "quantization interval (s2, 1-based)");
    o.by_name["sweep"] = sub->add_option("--sweep", f.sweep, "var=lo:hi:n or var=lo:hi:nL");
    o.by_name["practical"] = sub->add_flag("--practical", f.practical, "restrict to power-of-two constellations");
    return o;
}

RunConfig resolve(const Flags& f, const Options& o) {
    RunConfig rc = load_config(f.config);
    for (const auto& s : f.overrides) apply_override(rc, s);
    if (o.given("scenario")) rc.sim.scenario = parse_scenario(f.scenario);
    if (o.given("seed")) rc.sim.seed = f.seed;
    if (o.given("blocks")) rc.sim.blocks = f.blocks;
    if (o.given("out")) rc.sim.output_path = f.out;
    if (o.given("grid-points")) rc.grid_points = f.grid_points;
    if (o.given("workers")) rc.sim.workers = f.workers;
    if (o.given("t-block-ms")) rc.params.t_block = f.t_block_ms * 1e-3;
    if (o.given("phi")) rc.params.phi = f.phi;
    if (o.given("vartheta")) rc.params.vartheta = f.vartheta;
    if (o.given("b-feedback")) rc.params.b_feedback = f.b_feedback;
    if (o.given("sweep")) rc.sim.sweep = parse_sweep(f.sweep);
    if (o.given("practical")) rc.sim.practical = f.practical;
    if (rc.sim.blocks < 1) throw ConfigError("blocks must be at least 1");
    if (rc.sim.workers < 1) throw ConfigError("workers must be at least 1");
    if (rc.grid_points < 2) throw ConfigError("grid-points must be at least 2");
    validate(rc.params);
    return rc;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void print_policy(std::ostream& out, const Policy& pol, const SystemParams& p, const DerivedConstants& c) {
    out << "transmit=" << (pol.transmit ? "true" : "false") << '\n';
    if (!pol.transmit) return;
    const BlockOutcome b = psi(pol.m_real, pol.d_cp, pol.p_t, pol.design_gain, p, c);
    out << "branch=" << branch_name(pol.branch) << '\n'
        << "design_gain=" << num(pol.design_gain) << '\n'
        << "m_real=" << num(pol.m_real) << '\n'
        << "d_cp_bits=" << num(pol.d_cp) << '\n'
        << "d_cp_ratio=" << num(pol.d_cp / p.data_bits) << '\n'
        << "p_t_w=" << num(pol.p_t) << '\n'
        << "rate_bps=" << num(tx_rate(pol.m_real, p.t_s)) << '\n'
        << "t_cp_s=" << num(b.t_cp) << '\n'
        << "t_tx_s=" << num(b.t_tx) << '\n'
        << "ber_bound=" << num(b.ber_bound) << '\n'
        << "psi_j=" << num(pol.psi) << '\n'
        << "feasible_power=" << (pol.feasible_power ? "true" : "false") << '\n'
        << "m_practical=" << pol.m_practical << '\n'
        << "d_cp_practical_bits=" << num(pol.d_cp_practical) << '\n'
        << "p_t_practical_w=" << num(pol.p_t_practical) << '\n'
        << "psi_practical_j=" << num(pol.psi_practical) << '\n';
}

int cmd_solve(const RunConfig& rc, const Flags& f, const Options& o, std::ostream& out) {
    const SystemParams& p = rc.params;
    const DerivedConstants c = derive(p);
    out << "scenario=" << scenario_name(rc.sim.scenario) << '\n';
    switch (rc.sim.scenario) {
        case Scenario::s1: print_policy(out, scenario1_solve(f.gain, p, c), p, c); break;
        case Scenario::baseline: print_policy(out, baseline_solve(f.gain, p, c), p, c); break;
        case Scenario::s3: print_policy(out, scenario3_solve(p, c), p, c); break;
        case Scenario::s3_gated:
            if (!threshold_gate(f.gain, c)) {
                out << "gate_threshold=" << num(c.theta_gate) << '\n' << "transmit=false\n";
                return 0;
            }
            print_policy(out, scenario1_solve(f.gain, p, c), p, c);
            break;
        case Scenario::s2: {
            const Quantizer q = build_quantizer(p.b_feedback, p.varsigma);
            const int i = o.given("interval") ? f.interval : quantize(f.gain, q);
            if (i < 1 || i > q.intervals())
                throw ConfigError("interval must lie in [1, " + std::to_string(q.intervals()) + "]");
            const PolicyTable table = scenario2_table(p, c, q);
            out << "interval=" << i << '\n';
            print_policy(out, table.entries[i - 1], p, c);
            break;
        }
    }
    return 0;
}

int cmd_table(const RunConfig& rc, std::ostream& out) {
    const SystemParams& p = rc.params;
    const DerivedConstants c = derive(p);
    const Quantizer q = build_quantizer(p.b_feedback, p.varsigma);
    const PolicyTable table = scenario2_table(p, c, q);
    out << "interval,level_lo,level_hi,transmit,branch,m_real,m_practical,d_cp_bits,p_t_w,psi_j,feasible_power\n";
    for (int i = 0; i < q.intervals(); ++i) {
        const Policy& pol = table.entries[i];
        out << i + 1 << ',' << num(q.levels[i]) << ',' << num(q.levels[i + 1]) << ','
            << (pol.transmit ? "true" : "false") << ',' << branch_name(pol.branch) << ',' << num(pol.m_real) << ','
            << pol.m_practical << ',' << num(pol.d_cp) << ',' << num(pol.p_t) << ',' << num(pol.psi) << ','
            << (pol.feasible_power ? "true" : "false") << '\n';
    }
    return 0;
}

void write_result(const SweepResult& result, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-")
        out << format_csv(result);
    else
        emit_csv(result, path);
}

int cmd_simulate(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    SimConfig cfg = rc.sim;
    cfg.sweep.reset();
    SweepResult result;
    result.rows.push_back(simulate(cfg, rc.params));
    if (!result.rows[0].note.empty()) err << "note: " << result.rows[0].note << '\n';
    write_result(result, rc.sim.output_path, out);
    return 0;
}

int cmd_sweep(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    if (!rc.sim.sweep) throw ConfigError("sweep needs --sweep var=lo:hi:n or a [simulation] sweep key");
    const SweepResult result = sweep(rc.sim, rc.params);
    for (const auto& row : result.rows)
        if (!row.note.empty()) err << "note: " << row.swept_var << '=' << num(row.swept_value) << ": " << row.note << '\n';
    write_result(result, rc.sim.output_path, out);
    return 0;
}

int cmd_validate(const RunConfig& rc, std::ostream& out) {
    const SystemParams& p = rc.params;
    const DerivedConstants c = derive(p);
    GridSpec grid;
    grid.m_points = grid.dcp_points = rc.grid_points;
    grid.workers = rc.sim.workers;

    bool agree = true;
    auto report = [&](const std::string& probe, const Policy& pol, auto&& oracle) {
        if (!pol.feasible_power) {
            out << probe << " skipped: transmit power above cap\n";
            return;
        }
        const GridMinimum g = oracle();
        const double rel = (pol.psi - g.psi) / g.psi;
        const bool ok = std::abs(rel) <= oracle_tolerance;
        agree = agree && ok;
        out << probe << " closed_form_psi=" << num(pol.psi) << " oracle_psi=" << num(g.psi)
            << " rel_diff=" << num(rel) << (ok ? " ok" : " DISAGREE") << '\n';
    };
    for (double h2 : {0.01, 0.1, 1.0, 10.0, 100.0})
        report("s1 gain=" + num(h2), scenario1_solve(h2, p, c), [&] { return grid_minimize_s1(h2, p, c, grid); });
    report("s3 vartheta=" + num(p.vartheta), scenario3_solve(p, c), [&] { return grid_minimize_s3(p, c, grid); });
    out << (agree ? "validate: ok\n" : "validate: closed form and oracle disagree by more than 0.5%\n");
    return agree ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lifetime-optimal compression, modulation and power policies for a sensor node"};
    app.name("sensorlife");
    app.require_subcommand(1, 1);

    struct Sub {
        CLI::App* app;
        Flags flags;
        Options options;
    };
    std::map<std::string, Sub> subs;
    const std::pair<const char*, const char*> commands[] = {
        {"solve", "print the policy for one scenario and gain or interval"},
        {"sweep", "sweep one constraint and write CSV"},
        {"simulate", "run one Monte Carlo point and write CSV"},
        {"validate", "cross-check closed-form policies against the grid oracle"},
        {"table", "dump the quantized-feedback policy table"},
    };
    for (const auto& [name, help] : commands) {
        Sub& s = subs[name];
        s.app = app.add_subcommand(name, help);
        s.options = add_flags(s.app, s.flags);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "sensorlife: error: " << e.what() << '\n';
        return 1;
    }

    try {
        for (auto& [name, s] : subs) {
            if (!s.app->parsed()) continue;
            const RunConfig rc = resolve(s.flags, s.options);
            if (name == "solve") {
                // Buffered so a failed solve prints nothing to stdout.
                std::ostringstream buf;
                const int code = cmd_solve(rc, s.flags, s.options, buf);
                out << buf.str();
                return code;
            }
            if (name == "table") return cmd_table(rc, out);
            if (name == "simulate") return cmd_simulate(rc, out, err);
            if (name == "sweep") return cmd_sweep(rc, out, err);
            if (name == "validate") return cmd_validate(rc, out);
        }
    } catch (const Error& e) {
        err << "sensorlife: error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace sensorlife
