"""Drift systems, solved constants, and their cross-checks."""

import math
import random

import pytest

from semirandom.ode import (
    IntegratorConfig,
    OdeFailure,
    closed_form_degree1_constant,
    emit_tables,
    rhs_ham,
    rhs_min_degree,
    rhs_pm,
    solve_ham,
    solve_min_degree,
    solve_pm,
)
from semirandom.strategies import (
    ham_expected_changes,
    mindeg_expected_changes,
    pm_expected_changes,
)

LN2 = math.log(2.0)


def test_degree_drift_fresh_state():
    for k in (1, 2, 5):
        assert rhs_min_degree(0, k, 1)(0.0, [1.0]) == [-2.0]


def test_degree_drift_linear_case_closed_form():
    # single coordinate, one offer: y' = -1 - y, so y(x) = 2 exp(-x) - 1
    drift = rhs_min_degree(0, 1, 1)
    for y in (1.0, 0.5, 0.25):
        assert abs(drift(0.0, [y])[0] - (-1.0 - y)) < 1e-15
    sol = solve_min_degree(1, 1)
    assert abs(sol.constant - LN2) < 1e-8


def test_degree_drift_two_coordinates():
    drift = rhs_min_degree(0, 1, 2)
    d = drift(0.0, [1.0, 0.0])
    assert d[0] == -2.0
    assert d[1] == 2.0  # circle promotion plus the selected square's promotion


def test_pm_drift_values():
    assert rhs_pm(1)(0.0, [0.0, 0.0]) == [2.0, 0.0]
    dx, dr = rhs_pm(1)(0.0, [0.5, 0.0])
    assert abs(dx - 1.0) < 1e-15
    assert abs(dr - 0.5) < 1e-15


def test_ham_drift_values():
    assert rhs_ham(1)(0.0, [0.0, 0.0, 0.0]) == [0.0, 2.0, 0.0]
    dx, dy, dr = rhs_ham(1)(0.0, [0.5, 0.25, 0.05])
    assert abs(dx - 0.65) < 1e-15


def test_drift_identities_against_case_probability_compositions():
    rng = random.Random(42)
    for _ in range(100):
        l = rng.randint(1, 5)
        q = rng.randint(0, l - 1)
        k = rng.randint(1, 8)
        raw = [rng.random() for _ in range(l - q)]
        scale = rng.random() / max(sum(raw), 1e-9)
        y = [v * scale for v in raw]
        a = rhs_min_degree(q, k, l)(0.0, y)
        b = mindeg_expected_changes(y, k, q)
        assert max(abs(u - v) for u, v in zip(a, b)) < 1e-12
    for _ in range(100):
        k = rng.randint(1, 10)
        x = rng.uniform(0.0, 0.95)
        r = rng.uniform(0.0, x / 2)
        a = rhs_pm(k)(0.0, [x, r])
        b = pm_expected_changes(x, r, k)
        assert max(abs(u - v) for u, v in zip(a, b)) < 1e-12
    for _ in range(100):
        k = rng.randint(1, 10)
        x = rng.uniform(0.0, 0.9)
        r = rng.uniform(0.0, x / 5)
        yv = rng.uniform(0.0, 1.0 - x)
        a = rhs_ham(k)(0.0, [x, yv, r])
        b = ham_expected_changes(x, yv, r, k)
        assert max(abs(u - v) for u, v in zip(a, b)) < 1e-12


def test_single_target_constants_match_quadrature():
    # independent oracle: the one-phase system is separable
    for k in range(1, 6):
        sol = solve_min_degree(k, 1)
        assert abs(sol.constant - closed_form_degree1_constant(k)) < 1e-6


def test_breakpoints_increase_and_phase_chaining():
    sol = solve_min_degree(2, 3)
    assert sol.breakpoints == sorted(sol.breakpoints)
    assert len(sol.breakpoints) == 3
    assert sol.constant == sol.breakpoints[-1]
    assert len(sol.grid_s) == len(sol.grid_y[0])
    # retired coordinates are zero-filled beyond their phase
    i = next(j for j, s in enumerate(sol.grid_s) if s > sol.breakpoints[0] + 1e-6)
    assert sol.grid_y[0][i] == 0.0


def test_monotonicity_in_l_and_k():
    by_l = [solve_min_degree(2, l).constant for l in (1, 2, 3)]
    assert by_l == sorted(by_l)
    by_k = [solve_min_degree(k, 2).constant for k in (1, 2, 3)]
    assert by_k == sorted(by_k, reverse=True)


def test_pm_constant_and_trajectory():
    sol = solve_pm(1)
    assert abs(sol.constant - 1.27695) < 5e-4
    assert sol.warnings  # the endgame slope is tiny by design
    xs = sol.coordinate("x")
    assert xs[0] == 0.0 and xs[-1] > 0.99
    rs = sol.coordinate("r")
    assert min(rs) > -1e-12


def test_pm_eps_sensitivity_is_small():
    a = solve_pm(2, eps=1e-9)
    b = solve_pm(2, eps=1e-14)
    assert 0.0 < b.constant - a.constant < 1e-4


def test_ham_constants():
    sol = solve_ham(1)
    assert abs(sol.constant - 1.87230) < 5e-4
    sol = solve_ham(2)
    assert abs(sol.constant - 1.39618) < 5e-4


def test_tolerance_robustness():
    cfg = IntegratorConfig()
    half = cfg.halved_rtol()
    for solver, args in (
        (solve_min_degree, (1, 1)),
        (solve_min_degree, (2, 2)),
        (solve_pm, (2,)),
        (solve_ham, (2,)),
    ):
        a = solver(*args, cfg=cfg)
        b = solver(*args, cfg=half)
        assert abs(a.constant - b.constant) < 1e-7


def test_solver_failures_are_reported():
    with pytest.raises(OdeFailure):
        solve_min_degree(1, 1, cfg=IntegratorConfig(max_steps=3))
    with pytest.raises(ValueError):
        solve_pm(0)
    with pytest.raises(ValueError):
        solve_ham(1, x_stop=1.5)


def test_emit_tables_links_lower_bounds_to_degree_targets():
    recs = emit_tables("perfect_matching", range(2, 3))
    lower = next(r for r in recs if r.kind == "lower")
    assert abs(lower.constant - solve_min_degree(2, 1).constant) < 1e-12
    recs = emit_tables("hamilton_cycle", range(4, 5))
    lower = next(r for r in recs if r.kind == "lower")
    assert abs(lower.constant - solve_min_degree(4, 2).constant) < 1e-12
    assert abs(lower.constant - 1.07184) < 5e-5
    recs = emit_tables("min_degree", range(1, 3), range(1, 3))
    assert len(recs) == 4
    with pytest.raises(ValueError):
        emit_tables("clique", range(1, 2))
