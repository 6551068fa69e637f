#include <doctest.h>

#include <cmath>

#include "sensorlife/errors.hpp"
#include "sensorlife/roots.hpp"
#include "test_support.hpp"

using namespace sensorlife;
using testsupport::rel_close;

TEST_CASE("solve_bracketed known roots") {
    const RootResult r = solve_bracketed({[](double x) { return x * x - 2; }, 1, 2});
    CHECK(std::abs(r.root - std::sqrt(2.0)) < 1e-10);
    CHECK(solve_bracketed({[](double x) { return x - 5; }, 0, 10}).root == 5.0);
}

TEST_CASE("solve_bracketed reports failures") {
    CHECK_THROWS_AS(solve_bracketed({[](double x) { return x * x + 1; }, -1, 1}), NoSignChangeError);
    RootSpec slow{[](double x) { return std::cbrt(x - 0.3); }, 0, 1};
    slow.max_iter = 3;
    CHECK_THROWS_AS(solve_bracketed(slow), MaxIterationsError);
}

TEST_CASE("solve_bracketed is deterministic and honours the residual tolerance") {
    testsupport::Gen g(4);
    for (int i = 0; i < 200; ++i) {
        const double a = g.uniform(0.1, 10), b = g.uniform(0.5, 3);
        RootSpec spec{[=](double x) { return std::exp(b * x) - a; }, -20, 20};
        spec.residual_tol = 1e-13 * a;
        const RootResult r1 = solve_bracketed(spec);
        const RootResult r2 = solve_bracketed(spec);
        CHECK(r1.root == r2.root);
        CHECK(std::abs(std::exp(b * r1.root) - a) <= 1e-12 * a);
        CHECK(rel_close(r1.root, std::log(a) / b, 1e-10));
    }
}

TEST_CASE("expand_bracket terminates") {
    const Bracket br = expand_bracket([](double x) { return x - 1000; }, 1, 1, +1);
    CHECK(br.lo <= 1000);
    CHECK(br.hi >= 1000);
    CHECK_THROWS_AS(expand_bracket([](double) { return 1.0; }, 0, 1, +1), NoSignChangeError);
}

TEST_CASE("d_min at table defaults") {
    const SystemParams p = table_defaults();
    // No compression at the top constellation takes D t_s / log2(1024) = 32 ms.
    CHECK(rel_close(block_time(p, 1024, p.data_bits), 0.032, 1e-12));
    const double d_min = solve_d_min(p, 1024);
    CHECK(d_min > 0);
    CHECK(d_min < p.data_bits);
    CHECK(std::abs(block_time(p, 1024, d_min) - p.t_block) < 1e-12 * p.t_block);
    // Smallest root: every smaller size overruns the bound.
    for (double f : {0.999, 0.99, 0.9, 0.5, 0.1}) CHECK(block_time(p, 1024, d_min * f) > p.t_block);
    // The upper root lies above the fastest size.
    CHECK(d_min < fastest_dcp(p, 1024));
    CHECK(solve_d_min(p, 1024) == d_min);
}

TEST_CASE("d_min decreases as the bound loosens") {
    SystemParams p = table_defaults();
    double prev = p.data_bits;
    for (double t : {0.02, 0.03, 0.05, 0.1, 1.0, 10.0, 1000.0}) {
        p.t_block = t;
        const double d = solve_d_min(p, 1024);
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("d_min approaches D as compression grows expensive") {
    SystemParams p = table_defaults();
    p.t_block = 0.0321;  // barely above the 32 ms uncompressed time
    double prev = 0;
    for (double beta : {1.0, 5.0, 20.0, 80.0, 400.0, 2000.0}) {
        p.beta = beta;
        const double d = solve_d_min(p, 1024);
        CHECK(d > prev);
        prev = d;
    }
    CHECK(prev > 0.99 * p.data_bits);
}

TEST_CASE("d_min is infeasible when no compression level meets the bound") {
    SystemParams p = table_defaults();
    p.t_block = 0.010;
    CHECK_THROWS_AS(solve_d_min(p, 1024), InfeasibleError);
}

TEST_CASE("d_min residual on random configurations") {
    testsupport::Gen g(17);
    for (int i = 0; i < 300; ++i) {
        const SystemParams p = testsupport::random_params(g);
        const double m_max = std::ldexp(1.0, p.l_max);
        const double d = solve_d_min(p, m_max);
        CHECK(std::abs(block_time(p, m_max, d) - p.t_block) < 1e-12 * p.t_block);
        CHECK(block_time(p, m_max, d * (1 - 1e-9)) > p.t_block);
        const DcpInterval iv = feasible_dcp_interval(p, m_max);
        CHECK(iv.lo == d);
        CHECK(iv.hi <= p.data_bits);
        CHECK(block_time(p, m_max, iv.hi) <= p.t_block + 1e-12);
    }
}
