#include "sensorlife/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>

#include "sensorlife/channel.hpp"
#include "sensorlife/errors.hpp"
#include "sensorlife/parallel.hpp"
#include "sensorlife/policy.hpp"

namespace sensorlife {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr std::int64_t chunk_blocks = 4096;

}  // namespace

std::string_view scenario_name(Scenario s) {
    switch (s) {
        case Scenario::s1: return "s1";
        case Scenario::s2: return "s2";
        case Scenario::s3: return "s3";
        case Scenario::s3_gated: return "s3_gated";
        case Scenario::baseline: return "baseline";
    }
    return "unknown";
}

Scenario parse_scenario(std::string_view name) {
    for (Scenario s : {Scenario::s1, Scenario::s2, Scenario::s3, Scenario::s3_gated, Scenario::baseline})
        if (scenario_name(s) == name) return s;
    throw ConfigError("unknown scenario '" + std::string(name) + "' (expected s1, s2, s3, s3_gated, baseline)");
}

std::string_view sweep_variable_name(SweepVariable v) {
    switch (v) {
        case SweepVariable::phi: return "phi";
        case SweepVariable::t_block: return "t_block";
        case SweepVariable::b_feedback: return "b_feedback";
        case SweepVariable::vartheta: return "vartheta";
    }
    return "unknown";
}

namespace {

double parse_number(std::string_view text, std::string_view context) {
    const std::string s(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
        throw ConfigError("bad number '" + s + "' in " + std::string(context));
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

}  // namespace

SweepSpec parse_sweep(std::string_view text) {
    const std::size_t eq = text.find('=');
    if (eq == std::string_view::npos) throw ConfigError("sweep must look like var=lo:hi:n, got '" + std::string(text) + "'");
    const std::string_view var = text.substr(0, eq);
    const std::string_view range = text.substr(eq + 1);

    SweepSpec spec;
    bool known = false;
    for (SweepVariable v : {SweepVariable::phi, SweepVariable::t_block, SweepVariable::b_feedback, SweepVariable::vartheta}) {
        if (sweep_variable_name(v) == var) {
            spec.variable = v;
            known = true;
        }
    }
    if (!known) throw ConfigError("unknown sweep variable '" + std::string(var) + "' (expected phi, t_block, b_feedback, vartheta)");

    if (range.find(':') == std::string_view::npos) {
        for (auto part : split(range, ',')) spec.values.push_back(parse_number(part, "sweep list"));
        return spec;
    }
    const auto parts = split(range, ':');
    if (parts.size() != 3) throw ConfigError("sweep range must be lo:hi:n or lo:hi:nL");
    const double lo = parse_number(parts[0], "sweep range");
    const double hi = parse_number(parts[1], "sweep range");
    std::string_view count = parts[2];
    const bool log_spaced = !count.empty() && (count.back() == 'L' || count.back() == 'l');
    if (log_spaced) count.remove_suffix(1);
    const double n_real = parse_number(count, "sweep point count");
    if (n_real < 1 || n_real != std::floor(n_real) || n_real > 1e6) throw ConfigError("sweep point count must be a positive integer");
    const int n = static_cast<int>(n_real);
    if (log_spaced && !(lo > 0.0 && hi > 0.0)) throw ConfigError("log-spaced sweep needs positive bounds");
    for (int i = 0; i < n; ++i) {
        const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        double v = log_spaced ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
        if (i == 0) v = lo;
        if (i == n - 1 && n > 1) v = hi;
        spec.values.push_back(v);
    }
    return spec;
}

SystemParams apply_sweep_value(const SystemParams& params, SweepVariable variable, double value) {
    SystemParams p = params;
    switch (variable) {
        case SweepVariable::phi: p.phi = value; break;
        case SweepVariable::t_block: p.t_block = value * 1e-3; break;
        case SweepVariable::vartheta: p.vartheta = value; break;
        case SweepVariable::b_feedback:
            if (value != std::floor(value)) throw ParameterError("b_feedback sweep values must be integers");
            if (value < 1 || value > 16) throw ParameterError("b_feedback must lie in [1, 16]");
            p.b_feedback = static_cast<int>(value);
            break;
    }
    validate(p);
    return p;
}

namespace {

struct BlockResult {
    bool outage = false;
    double psi = 0.0;
    double m = 0.0;
    double d_cp = 0.0;
    Branch branch = Branch::clamped;
};

struct Accumulator {
    double sum_psi = 0.0;
    double sum_psi2 = 0.0;
    double sum_dcp_ratio = 0.0;
    double sum_rate = 0.0;
    double sum_m = 0.0;
    std::int64_t served = 0;
    std::int64_t outages = 0;
    std::int64_t branches[3] = {0, 0, 0};

    void add(const BlockResult& r, const SystemParams& p) {
        sum_psi += r.psi;
        sum_psi2 += r.psi * r.psi;
        if (r.outage) {
            ++outages;
            return;
        }
        ++served;
        sum_dcp_ratio += r.d_cp / p.data_bits;
        sum_rate += tx_rate(r.m, p.t_s);
        sum_m += r.m;
        ++branches[static_cast<int>(r.branch)];
    }

    void merge(const Accumulator& o) {
        sum_psi += o.sum_psi;
        sum_psi2 += o.sum_psi2;
        sum_dcp_ratio += o.sum_dcp_ratio;
        sum_rate += o.sum_rate;
        sum_m += o.sum_m;
        served += o.served;
        outages += o.outages;
        for (int i = 0; i < 3; ++i) branches[i] += o.branches[i];
    }
};

BlockResult served(const Policy& pol, bool practical) {
    BlockResult r;
    r.psi = practical ? pol.psi_practical : pol.psi;
    r.m = practical ? pol.m_practical : pol.m_real;
    r.d_cp = practical ? pol.d_cp_practical : pol.d_cp;
    r.branch = pol.branch;
    return r;
}

bool fits_cap(const Policy& pol, bool practical) {
    return pol.transmit && (practical ? pol.feasible_power_practical : pol.feasible_power);
}

BlockResult outage(double psi) {
    BlockResult r;
    r.outage = true;
    r.psi = psi;
    return r;
}

void finalize(SweepRow& row, const Accumulator& acc, std::int64_t n, const SystemParams& p) {
    row.blocks = n;
    row.e_psi = acc.sum_psi / n;
    const double var = n > 1 ? std::max(0.0, (acc.sum_psi2 - n * row.e_psi * row.e_psi) / (n - 1)) : 0.0;
    row.e_psi_stderr = std::sqrt(var / n);
    row.outage_frac = static_cast<double>(acc.outages) / n;
    if (acc.served > 0) {
        row.mean_dcp_ratio = acc.sum_dcp_ratio / acc.served;
        row.mean_rate_bps = acc.sum_rate / acc.served;
        row.mean_m = acc.sum_m / acc.served;
    } else {
        row.mean_dcp_ratio = row.mean_rate_bps = row.mean_m = nan;
    }
    row.branch_unconstrained = acc.branches[static_cast<int>(Branch::unconstrained)];
    row.branch_delay_active = acc.branches[static_cast<int>(Branch::delay_active)];
    row.branch_clamped = acc.branches[static_cast<int>(Branch::clamped)];
    try {
        row.lifetime_s = lifetime(row.e_psi, p);
    } catch (const ParameterError&) {
        row.lifetime_s = std::numeric_limits<double>::infinity();
    }
    row.lifetime_days = row.lifetime_s / 86400.0;
}

void mark_infeasible(SweepRow& row, const std::string& why) {
    row.feasible = false;
    row.note = why;
    row.e_psi = row.e_psi_stderr = row.lifetime_s = row.lifetime_days = nan;
    row.mean_dcp_ratio = row.mean_rate_bps = row.mean_m = row.outage_frac = nan;
    row.branch_unconstrained = row.branch_delay_active = row.branch_clamped = 0;
}

Accumulator run_blocks(const SimConfig& cfg, const SystemParams& p,
                       const std::function<BlockResult(double)>& per_block) {
    const std::int64_t n_chunks = (cfg.blocks + chunk_blocks - 1) / chunk_blocks;
    std::vector<Accumulator> chunks(static_cast<std::size_t>(n_chunks));
    parallel_for(chunks.size(), cfg.workers, [&](std::size_t c) {
        GainSampler sampler(splitmix64(cfg.seed ^ splitmix64(c)), p.varsigma);
        const std::int64_t begin = static_cast<std::int64_t>(c) * chunk_blocks;
        const std::int64_t end = std::min(cfg.blocks, begin + chunk_blocks);
        Accumulator acc;
        for (std::int64_t i = begin; i < end; ++i) acc.add(per_block(sampler()), p);
        chunks[c] = acc;
    });
    Accumulator total;
    for (const auto& a : chunks) total.merge(a);
    return total;
}

}  // namespace

SweepRow simulate(const SimConfig& cfg, const SystemParams& params) {
    if (cfg.blocks < 1) throw ConfigError("blocks must be at least 1");
    const DerivedConstants derived = derive(params);
    const bool practical = cfg.practical;
    SweepRow row;
    try {
        const JointSolver solver(params, derived);
        auto joint_at = [&](double h2) { return solver.solve(prop1_power(2.0, h2, derived), h2); };

        // Outage energy is needed only if the cap binds somewhere; build it on demand.
        std::optional<double> joint_outage;
        auto joint_outage_psi = [&] {
            if (!joint_outage) joint_outage = outage_model(solver, PolicyFamily::joint, practical).psi;
            return *joint_outage;
        };

        Accumulator acc;
        switch (cfg.scenario) {
            case Scenario::s1: {
                solver.d_min();
                joint_outage_psi();
                acc = run_blocks(cfg, params, [&](double h2) {
                    if (!(h2 > 0.0)) return outage(*joint_outage);
                    const Policy pol = joint_at(h2);
                    return fits_cap(pol, practical) ? served(pol, practical) : outage(*joint_outage);
                });
                break;
            }
            case Scenario::s2: {
                const Quantizer q = build_quantizer(params.b_feedback, params.varsigma);
                const PolicyTable table = scenario2_table(params, derived, q);
                const double out_psi = joint_outage_psi();
                acc = run_blocks(cfg, params, [&](double h2) {
                    const Policy& pol = table.entries[quantize(h2, q) - 1];
                    return fits_cap(pol, practical) ? served(pol, practical) : outage(out_psi);
                });
                break;
            }
            case Scenario::s3: {
                // One fixed policy: E[psi] = psi exactly, whatever the block count.
                const Policy pol = scenario3_solve(params, derived);
                const BlockResult r = served(pol, practical);
                const bool ok = fits_cap(pol, practical);
                row.blocks = cfg.blocks;
                row.e_psi = r.psi;
                row.e_psi_stderr = 0.0;
                row.outage_frac = ok ? 0.0 : 1.0;
                row.mean_dcp_ratio = ok ? r.d_cp / params.data_bits : nan;
                row.mean_rate_bps = ok ? tx_rate(r.m, params.t_s) : nan;
                row.mean_m = ok ? r.m : nan;
                if (ok) {
                    if (r.branch == Branch::unconstrained) row.branch_unconstrained = cfg.blocks;
                    if (r.branch == Branch::delay_active) row.branch_delay_active = cfg.blocks;
                    if (r.branch == Branch::clamped) row.branch_clamped = cfg.blocks;
                } else {
                    row.note = "transmit power above cap";
                }
                row.lifetime_s = lifetime(row.e_psi, params);
                row.lifetime_days = row.lifetime_s / 86400.0;
                return row;
            }
            case Scenario::s3_gated: {
                solver.d_min();
                joint_outage_psi();
                acc = run_blocks(cfg, params, [&](double h2) {
                    if (!threshold_gate(h2, derived)) return outage(0.0);
                    const Policy pol = joint_at(h2);
                    return fits_cap(pol, practical) ? served(pol, practical) : outage(*joint_outage);
                });
                break;
            }
            case Scenario::baseline: {
                const double out_psi = outage_model(solver, PolicyFamily::uncompressed, practical).psi;
                acc = run_blocks(cfg, params, [&](double h2) {
                    if (!(h2 > 0.0)) return outage(out_psi);
                    const Policy pol = solver.solve_uncompressed(prop1_power(2.0, h2, derived), h2);
                    return fits_cap(pol, practical) ? served(pol, practical) : outage(out_psi);
                });
                break;
            }
        }
        finalize(row, acc, cfg.blocks, params);
    } catch (const InfeasibleError& e) {
        mark_infeasible(row, e.what());
    }
    return row;
}

double expected_psi_quantized(const SystemParams& params, const DerivedConstants& derived, int b, bool practical) {
    const Quantizer q = build_quantizer(b, params.varsigma);
    const PolicyTable table = scenario2_table(params, derived, q);
    const JointSolver solver(params, derived);
    std::optional<double> out_psi;
    double sum = 0.0;
    for (const Policy& pol : table.entries) {
        if (fits_cap(pol, practical)) {
            sum += practical ? pol.psi_practical : pol.psi;
        } else {
            if (!out_psi) out_psi = outage_model(solver, PolicyFamily::joint, practical).psi;
            sum += *out_psi;
        }
    }
    return sum / static_cast<double>(table.entries.size());
}

SweepResult sweep(const SimConfig& cfg, const SystemParams& params) {
    if (!cfg.sweep) throw ConfigError("sweep requested without a sweep specification");
    const SweepSpec& spec = *cfg.sweep;
    std::vector<SystemParams> points;
    points.reserve(spec.values.size());
    for (double v : spec.values) points.push_back(apply_sweep_value(params, spec.variable, v));

    SweepResult result;
    for (std::size_t i = 0; i < points.size(); ++i) {
        SimConfig point_cfg = cfg;
        point_cfg.sweep.reset();
        point_cfg.seed = cfg.seed ^ static_cast<std::uint64_t>(i);
        SweepRow row = simulate(point_cfg, points[i]);
        row.swept_var = std::string(sweep_variable_name(spec.variable));
        row.swept_value = spec.values[i];
        result.rows.push_back(std::move(row));
    }
    return result;
}

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::string format_csv(const SweepResult& result) {
    std::string out =
        "swept_var,swept_value,e_psi_j,lifetime_s,lifetime_days,mean_dcp_ratio,mean_rate_bps,mean_m,"
        "outage_frac,branch_unconstrained,branch_delay_active,branch_clamped\n";
    for (const SweepRow& r : result.rows) {
        out += r.swept_var + ',' + num(r.swept_value) + ',' + num(r.e_psi) + ',' + num(r.lifetime_s) + ',' +
               num(r.lifetime_days) + ',' + num(r.mean_dcp_ratio) + ',' + num(r.mean_rate_bps) + ',' +
               num(r.mean_m) + ',' + num(r.outage_frac) + ',' + std::to_string(r.branch_unconstrained) + ',' +
               std::to_string(r.branch_delay_active) + ',' + std::to_string(r.branch_clamped) + '\n';
    }
    return out;
}

void emit_csv(const SweepResult& result, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    const std::string text = format_csv(result);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    f.close();
    if (!f) throw IoError("failed writing '" + path + "'");
}

}  // namespace sensorlife
