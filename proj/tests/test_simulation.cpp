#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sensorlife/errors.hpp"
#include "sensorlife/policy.hpp"
#include "sensorlife/simulation.hpp"
#include "test_support.hpp"

using namespace sensorlife;
using testsupport::rel_close;

namespace {

SimConfig config(Scenario s, std::int64_t blocks, std::uint64_t seed = 1) {
    SimConfig c;
    c.scenario = s;
    c.blocks = blocks;
    c.seed = seed;
    return c;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("scenario 3 is deterministic in the block count") {
    const SystemParams p = table_defaults();
    const SweepRow a = simulate(config(Scenario::s3, 1), p);
    const SweepRow b = simulate(config(Scenario::s3, 1000000), p);
    CHECK(a.e_psi == b.e_psi);
    CHECK(a.e_psi == scenario3_solve(p, derive(p)).psi);
}

TEST_CASE("same seed gives identical rows, different worker counts too") {
    const SystemParams p = desk_defaults();
    for (Scenario s : {Scenario::s1, Scenario::s2, Scenario::s3_gated, Scenario::baseline}) {
        SimConfig c = config(s, 20000, 99);
        const SweepRow a = simulate(c, p);
        c.workers = 3;
        const SweepRow b = simulate(c, p);
        CHECK(a.e_psi == b.e_psi);
        CHECK(a.e_psi_stderr == b.e_psi_stderr);
        CHECK(a.mean_dcp_ratio == b.mean_dcp_ratio);
        CHECK(a.outage_frac == b.outage_frac);
        CHECK(a.branch_delay_active == b.branch_delay_active);
        c.seed = 100;
        CHECK(simulate(c, p).e_psi != a.e_psi);
    }
}

TEST_CASE("row lifetime is the energy-model lifetime") {
    const SystemParams p = desk_defaults();
    for (Scenario s : {Scenario::s1, Scenario::s2, Scenario::s3, Scenario::s3_gated, Scenario::baseline}) {
        const SweepRow r = simulate(config(s, 5000), p);
        REQUIRE(r.feasible);
        CHECK(r.lifetime_s == lifetime(r.e_psi, p));
        CHECK(r.lifetime_days == r.lifetime_s / 86400.0);
        CHECK(r.branch_unconstrained + r.branch_delay_active + r.branch_clamped +
                  std::llround(r.outage_frac * r.blocks) ==
              r.blocks);
    }
}

TEST_CASE("gated scenario drops a share of blocks near 1 - vartheta") {
    const SystemParams p = desk_defaults();
    const SweepRow r = simulate(config(Scenario::s3_gated, 200000), p);
    const double drop = 1 - p.vartheta;
    CHECK(r.outage_frac >= drop - 3 * std::sqrt(drop * (1 - drop) / 200000));
}

TEST_CASE("quantized expectation with one feedback bit") {
    const SystemParams p = desk_defaults();
    const DerivedConstants c = derive(p);
    const JointSolver solver(p, c);
    const double outage = outage_model(solver, PolicyFamily::joint, false).psi;
    const Policy top = scenario1_solve(std::log(2.0), p, c);
    REQUIRE(top.feasible_power);
    CHECK(rel_close(expected_psi_quantized(p, c, 1), (outage + top.psi) / 2, 1e-15));
}

TEST_CASE("quantized expectation does not rise with feedback bits") {
    for (const SystemParams& p : {table_defaults(), desk_defaults()}) {
        const DerivedConstants c = derive(p);
        double prev = std::numeric_limits<double>::infinity();
        for (int b = 1; b <= 8; ++b) {
            const double e = expected_psi_quantized(p, c, b);
            CHECK(e <= prev);
            prev = e;
        }
    }
}

TEST_CASE("Monte Carlo agrees with the exact quantized expectation") {
    for (int b : {2, 4}) {
        SystemParams p = desk_defaults();
        p.b_feedback = b;
        const SweepRow r = simulate(config(Scenario::s2, 1000000, 7), p);
        CHECK(std::abs(r.e_psi - expected_psi_quantized(p, derive(p), b)) <= 3 * r.e_psi_stderr);
    }
}

TEST_CASE("delay-infeasible points become flagged rows") {
    SystemParams p = table_defaults();
    p.t_block = 0.010;
    const SweepRow r = simulate(config(Scenario::s1, 100), p);
    CHECK_FALSE(r.feasible);
    CHECK(std::isnan(r.e_psi));
    CHECK_FALSE(r.note.empty());
}

TEST_CASE("parse_sweep") {
    const SweepSpec lin = parse_sweep("t_block=20:80:7");
    CHECK(lin.variable == SweepVariable::t_block);
    REQUIRE(lin.values.size() == 7);
    CHECK(lin.values.front() == 20);
    CHECK(lin.values.back() == 80);
    CHECK(lin.values[3] == doctest::Approx(50));

    const SweepSpec lg = parse_sweep("phi=1e-6:1e-2:5L");
    REQUIRE(lg.values.size() == 5);
    CHECK(rel_close(lg.values[2], 1e-4, 1e-12));

    CHECK(parse_sweep("b_feedback=1,2,3").values.size() == 3);
    CHECK(parse_sweep("vartheta=0.9:0.9:1").values.size() == 1);
    CHECK_THROWS_AS(parse_sweep("gain=1:2:3"), ConfigError);
    CHECK_THROWS_AS(parse_sweep("phi=1:2"), ConfigError);
    CHECK_THROWS_AS(parse_sweep("phi=0:1:3L"), ConfigError);
    CHECK_THROWS_AS(parse_sweep("phi=1:2:x"), ConfigError);
}

TEST_CASE("sweep rows, seeds and validation") {
    SimConfig c = config(Scenario::s1, 2000, 5);
    c.sweep = parse_sweep("t_block=20:80:7");
    const SweepResult r = sweep(c, desk_defaults());
    REQUIRE(r.rows.size() == 7);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        CHECK(r.rows[i].swept_var == "t_block");
        SimConfig single = config(Scenario::s1, 2000, 5 ^ i);
        const SweepRow direct = simulate(single, apply_sweep_value(desk_defaults(), SweepVariable::t_block, r.rows[i].swept_value));
        CHECK(direct.e_psi == r.rows[i].e_psi);
    }
    c.sweep = parse_sweep("b_feedback=0:3:4");
    CHECK_THROWS_AS(sweep(c, desk_defaults()), ParameterError);
    c.sweep = parse_sweep("vartheta=0.5:1:3");
    CHECK_THROWS_AS(sweep(c, desk_defaults()), ParameterError);
}

TEST_CASE("joint rows dominate baseline rows") {
    SimConfig c = config(Scenario::s1, 4000, 3);
    c.sweep = parse_sweep("t_block=20:80:7");
    const SweepResult joint = sweep(c, desk_defaults());
    c.scenario = Scenario::baseline;
    const SweepResult base = sweep(c, desk_defaults());
    int compared = 0;
    for (std::size_t i = 0; i < joint.rows.size(); ++i) {
        if (!base.rows[i].feasible) continue;
        ++compared;
        CHECK(joint.rows[i].lifetime_s > base.rows[i].lifetime_s);
    }
    CHECK(compared >= 5);
}

TEST_CASE("csv output") {
    const std::string header =
        "swept_var,swept_value,e_psi_j,lifetime_s,lifetime_days,mean_dcp_ratio,mean_rate_bps,mean_m,"
        "outage_frac,branch_unconstrained,branch_delay_active,branch_clamped\n";
    CHECK(format_csv(SweepResult{}) == header);

    SimConfig c = config(Scenario::s2, 3000, 11);
    c.sweep = parse_sweep("phi=1e-6:1e-2:3L");
    const SweepResult r = sweep(c, desk_defaults());
    const std::string path = "sensorlife_test_out.csv";
    emit_csv(r, path);
    const std::string first = slurp(path);
    emit_csv(sweep(c, desk_defaults()), path);
    CHECK(slurp(path) == first);
    CHECK(first.rfind(header, 0) == 0);
    std::remove(path.c_str());

    std::istringstream lines(first);
    std::string line;
    std::getline(lines, line);
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        double cols[12];
        char var[32];
        REQUIRE(std::sscanf(line.c_str(), "%31[^,],%lf,%lf,%lf,%lf", var, &cols[0], &cols[1], &cols[2], &cols[3]) == 5);
        CHECK(rel_close(cols[3], cols[2] / 86400.0, 1e-11));
    }
    CHECK(rows == 3);
    CHECK_THROWS_AS(emit_csv(r, "/nonexistent-dir/x.csv"), IoError);
}
