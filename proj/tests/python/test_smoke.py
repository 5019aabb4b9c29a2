import os
import subprocess

import numpy as np
import pytest

import aloha_games as ag

A = ag.chain(3)
Y = np.full(3, 0.15)


def test_least_fixed_point():
    r = ag.kleene_lfp(A, Y)
    assert r.interior
    np.testing.assert_allclose(r.q_star, [0.195209, 0.231593, 0.195209], atol=1e-6)
    np.testing.assert_allclose(ag.achieved_rate(r.q_star, A), Y, atol=1e-10)
    np.testing.assert_allclose(ag.best_response(r.q_star, A, Y), r.q_star, atol=1e-9)


def test_oracle_and_verdicts():
    points, extraneous = ag.multistart_fixed_points(A, Y)
    assert extraneous
    assert len(points) == 2
    assert ag.krasovskii_verdict(points[0], A, Y).stable
    assert not ag.krasovskii_verdict(points[1], A, Y).stable


def test_cycle_from_upper_point():
    _, upper = ag.multistart_fixed_points(A, Y)[0]
    t = ag.iterate_game(upper, A, Y, perturbation=np.array([1e-6, -1e-6, 1e-6]))
    assert t["outcome"] == "cycle"
    assert t["period"] == 2


def test_topology_and_rates():
    a, positions, ranges = ag.random_topology(10, 8.0, 3)
    assert len(a) == 10 and len(positions) == 10
    assert ranges[:5] == [5.0] * 5
    assert 0.0 <= ag.connectivity(a) <= 1.0
    y_max, q = ag.max_common_rate(ag.fully_connected(3))
    assert y_max == pytest.approx(0.148)


def test_power_law():
    x = np.geomspace(0.2, 1.0, 8)
    low, high = ag.fit_power_law(list(zip(x, 0.37 * x ** -0.82)))
    assert low is None
    assert high == pytest.approx((0.37, -0.82))


def test_errors():
    with pytest.raises(ValueError):
        ag.kleene_lfp(A, np.full(2, 0.1))
    with pytest.raises(ag.InstanceTooLarge):
        ag.multistart_fixed_points(ag.chain(9), np.full(9, 0.01))


def test_cli_solve():
    cli = os.environ.get("ALOHA_CLI")
    if not cli:
        pytest.skip("CLI path not provided")
    out = subprocess.run([cli, "solve", "--chain", "3", "--rates", "0.15"], capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.strip() == "NE=[0.1952,0.2316,0.1952] stable=true"
