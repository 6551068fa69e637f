#include <doctest.h>

#include <cmath>

#include "sensorlife/energy.hpp"
#include "sensorlife/errors.hpp"
#include "sensorlife/oracle.hpp"
#include "sensorlife/policy.hpp"
#include "sensorlife/roots.hpp"
#include "test_support.hpp"

using namespace sensorlife;

namespace {

GridSpec square(int n) {
    GridSpec g;
    g.m_points = g.dcp_points = n;
    return g;
}

}  // namespace

TEST_CASE("expensive compression pushes the oracle to D") {
    SystemParams p = table_defaults();
    p.p_cp = 1e6;
    const DerivedConstants c = derive(p);
    const GridSpec g = square(400);
    const GridMinimum o = grid_minimize_s1(1.0, p, c, g);
    const double step = (p.data_bits - solve_d_min(p, c.m_max)) / (g.dcp_points - 1);
    CHECK(o.d_cp >= p.data_bits - step * (1 + 1e-9));
}

TEST_CASE("the reported minimum bounds every feasible grid point") {
    const SystemParams p = table_defaults();
    const DerivedConstants c = derive(p);
    const GridSpec g = square(60);
    const GridMinimum o = grid_minimize_s1(2.0, p, c, g);
    const double d_min = solve_d_min(p, c.m_max);
    for (int i = 0; i < g.m_points; ++i) {
        const double m = std::exp(std::log(2.0) + i * (std::log(c.m_max) - std::log(2.0)) / (g.m_points - 1));
        for (int j = 0; j < g.dcp_points; ++j) {
            const double x = d_min + j * (p.data_bits - d_min) / (g.dcp_points - 1);
            const BlockOutcome b = psi(m, x, prop1_power(m, 2.0, c), 2.0, p, c);
            if (b.feasible_delay && b.feasible_power) CHECK(o.psi <= b.psi * (1 + 1e-12));
        }
    }
}

TEST_CASE("grid refinement never raises the minimum") {
    for (const SystemParams& p : {table_defaults(), desk_defaults()}) {
        const DerivedConstants c = derive(p);
        double prev = grid_minimize_s1(1.0, p, c, square(250)).psi;
        for (int n : {499, 997, 1993}) {
            // n - 1 a multiple of the previous step count keeps earlier nodes in the grid
            const double now = grid_minimize_s1(1.0, p, c, square(n)).psi;
            CHECK(now <= prev * (1 + 1e-12));
            prev = now;
        }
    }
}

TEST_CASE("refinement sequence converges") {
    const SystemParams p = desk_defaults();
    const DerivedConstants c = derive(p);
    double values[4];
    int k = 0;
    for (int n : {250, 500, 1000, 2000}) values[k++] = grid_minimize_s1(1.0, p, c, square(n)).psi;
    CHECK(std::abs(values[3] - values[2]) <= 5e-4 * values[3]);
}

TEST_CASE("scenario 3 oracle") {
    SystemParams p = table_defaults();
    const DerivedConstants c = derive(p);
    const GridMinimum o = grid_minimize_s3(p, c, GridSpec{});
    CHECK(std::abs(scenario3_solve(p, c).psi - o.psi) <= 1e-3 * o.psi);

    SystemParams d = desk_defaults();
    double prev = 0;
    for (double v : {0.5, 0.9, 0.95, 0.99, 0.999}) {
        d.vartheta = v;
        d.p_t_max = 1e9;
        const double e = grid_minimize_s3(d, derive(d), square(300)).psi;
        CHECK(e >= prev * (1 - 1e-12));
        prev = e;
    }
}

TEST_CASE("tightening the delay shrinks the feasible share of the grid") {
    SystemParams p = table_defaults();
    double prev = 1.0;
    for (double t : {0.1, 0.05, 0.03, 0.02, 0.015}) {
        p.t_block = t;
        const GridMinimum o = grid_minimize_s3(p, derive(p), square(200));
        const double share = static_cast<double>(o.feasible_points) / o.total_points;
        CHECK(share <= prev);
        prev = share;
    }
    SystemParams q = table_defaults();
    q.t_block = 0.010;
    CHECK_THROWS_AS(grid_minimize_s1(1.0, q, derive(q), square(50)), InfeasibleError);
}

TEST_CASE("parallel rows give the same answer") {
    const SystemParams p = desk_defaults();
    const DerivedConstants c = derive(p);
    GridSpec one = square(300), four = square(300);
    four.workers = 4;
    const GridMinimum a = grid_minimize_s1(0.5, p, c, one), b = grid_minimize_s1(0.5, p, c, four);
    CHECK(a.psi == b.psi);
    CHECK(a.m == b.m);
    CHECK(a.d_cp == b.d_cp);
    CHECK(a.feasible_points == b.feasible_points);
}

TEST_CASE("an empty feasible set is reported") {
    SystemParams p = desk_defaults();
    p.p_t_max = 1e-30;
    CHECK_THROWS_AS(grid_minimize_s1(1.0, p, derive(p), square(20)), EmptyFeasibleSetError);
}
