import math
import os
import subprocess

import pytest

import sensorlife


def test_defaults_and_derived():
    p = sensorlife.table_defaults()
    assert p.l_max == 10
    assert math.isclose(sensorlife.watts_to_dbm(p.sigma2), -174.0, rel_tol=1e-12)
    c = sensorlife.derive(p)
    assert c.m_max == 1024
    assert c.p_o > 0


def test_solve_matches_oracle():
    p = sensorlife.desk_defaults()
    c = sensorlife.derive(p)
    pol = sensorlife.scenario1_solve(1.0, p, c)
    assert pol.transmit
    assert 2 <= pol.m_real <= c.m_max
    grid = sensorlife.GridSpec()
    grid.m_points = grid.dcp_points = 800
    brute = sensorlife.grid_minimize_s1(1.0, p, c, grid)
    assert pol.psi <= brute.psi * (1 + 1e-9)
    assert pol.psi >= brute.psi * (1 - 1e-2)


def test_errors_map_to_python_exceptions():
    p = sensorlife.table_defaults()
    p.phi = 0.5
    with pytest.raises(sensorlife.ParameterError):
        sensorlife.derive(p)


def test_sweep_is_deterministic():
    p = sensorlife.desk_defaults()
    a = sensorlife.format_csv(sensorlife.sweep("s2", p, "t_block=30:80:3", blocks=5000, seed=7))
    b = sensorlife.format_csv(sensorlife.sweep("s2", p, "t_block=30:80:3", blocks=5000, seed=7, workers=3))
    assert a == b
    assert len(a.strip().splitlines()) == 4


def test_cli_matches_module():
    cli = os.environ.get("SENSORLIFE_CLI")
    if not cli:
        pytest.skip("SENSORLIFE_CLI not set")
    out = subprocess.run(
        [cli, "sweep", "--config", "desk", "--scenario", "s2", "--sweep", "t_block=30:80:3",
         "--blocks", "5000", "--seed", "7"],
        check=True, capture_output=True, text=True,
    ).stdout
    p = sensorlife.desk_defaults()
    assert out == sensorlife.format_csv(sensorlife.sweep("s2", p, "t_block=30:80:3", blocks=5000, seed=7))
