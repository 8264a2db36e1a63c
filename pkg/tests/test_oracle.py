"""Exact tiny-instance oracle and simulator agreement."""

import math
from fractions import Fraction

import pytest

from semirandom import ProcessConfig
from semirandom.harness import exact_small_oracle
from semirandom.process import TIE_LOWEST, TIE_UNIFORM
from semirandom.strategies import pm_run, run_min_degree


def test_degree_target_n4_k1():
    res = exact_small_oracle(4, 1, "min_degree", l=1)
    assert res.expectation == Fraction(5, 2)
    assert res.distribution == {2: Fraction(1, 2), 3: Fraction(1, 2)}
    assert res.tail == 0


def test_degree_target_n4_k2():
    res = exact_small_oracle(4, 2, "min_degree", l=1)
    assert res.expectation == Fraction(9, 4)
    assert sum(res.distribution.values()) == 1


def test_degree_target_single_round():
    # two vertices, one round: square plus avoided circle covers both
    res = exact_small_oracle(2, 1, "min_degree", l=1)
    assert res.expectation == 1


def test_policies_change_the_expectation():
    avoid = exact_small_oracle(4, 1, "min_degree", l=1)
    lowest = exact_small_oracle(4, 1, "min_degree", l=1, tie_break=TIE_LOWEST)
    uniform = exact_small_oracle(4, 1, "min_degree", l=1, tie_break=TIE_UNIFORM)
    assert avoid.expectation < lowest.expectation
    assert avoid.expectation < uniform.expectation


def test_matching_n2_is_geometric():
    for k in (1, 2):
        res = exact_small_oracle(2, k, "perfect_matching")
        assert res.expectation == 2
        # geometric law with success probability 1/2
        assert res.distribution[1] == Fraction(1, 2)
        assert res.distribution[3] == Fraction(1, 8)
        assert res.tail < Fraction(1, 10**9)


def test_matching_law_sums_to_one():
    res = exact_small_oracle(4, 2, "perfect_matching")
    total = sum(res.distribution.values()) + res.tail
    assert abs(float(total) - 1.0) < 1e-9
    assert float(res.expectation) > 2.0


def test_rejects_intractable_or_unknown_targets():
    with pytest.raises(ValueError):
        exact_small_oracle(9, 1, "min_degree", l=1)
    with pytest.raises(ValueError):
        exact_small_oracle(8, 8, "min_degree", l=1)
    with pytest.raises(ValueError):
        exact_small_oracle(3, 1, "perfect_matching")
    with pytest.raises(ValueError):
        exact_small_oracle(4, 1, "hamilton_cycle")


@pytest.mark.parametrize(
    "n,k,target,l",
    [
        (4, 1, "min_degree", 1),
        (6, 2, "min_degree", 1),
        (4, 2, "min_degree", 2),
        (4, 1, "perfect_matching", 0),
        (6, 2, "perfect_matching", 0),
    ],
)
def test_simulator_agrees_with_oracle(n, k, target, l):
    trials = 30_000
    if target == "min_degree":
        res = exact_small_oracle(n, k, target, l=l)
        cfg = ProcessConfig(n=n, k=k, seed=1000 + n + k)
        values = [run_min_degree(cfg, l, trial_index=i).rounds for i in range(trials)]
    else:
        res = exact_small_oracle(n, k, target)
        cfg = ProcessConfig(n=n, k=k, seed=2000 + n + k)
        values = [pm_run(cfg, trial_index=i).total_rounds for i in range(trials)]
    mean = sum(values) / trials
    var = sum((v - mean) ** 2 for v in values) / (trials - 1)
    sigma = math.sqrt(var / trials)
    assert abs(mean - float(res.expectation)) < 4 * sigma + 1e-9


@pytest.mark.slow
def test_simulator_agrees_with_oracle_full_sweep():
    # heavier grid at a million trials per configuration
    trials = 1_000_000
    for n in (4, 6):
        for k in (1, 2, 3):
            res = exact_small_oracle(n, k, "min_degree", l=1)
            cfg = ProcessConfig(n=n, k=k, seed=31_000 + 10 * n + k)
            total = 0
            totsq = 0
            for i in range(trials):
                r = run_min_degree(cfg, 1, trial_index=i).rounds
                total += r
                totsq += r * r
            mean = total / trials
            sigma = math.sqrt((totsq / trials - mean**2) / trials)
            assert abs(mean - float(res.expectation)) < 4 * sigma + 1e-9
