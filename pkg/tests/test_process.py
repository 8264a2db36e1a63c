"""Degree state, buckets, and square draws."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from semirandom import (
    ProcessConfig,
    add_edge,
    count_degree,
    draw_squares,
    init_state,
    min_degree,
    trial_rng,
    trial_streams,
)
from semirandom.process import LOOP_COUNTS_ONE, state_from_degrees


def test_init_state_empty_graph():
    state = init_state(ProcessConfig(n=5, k=2))
    assert state.t == 0
    assert state.degree[1:] == [0] * 5
    assert min_degree(state) == 0
    assert count_degree(state, 0) == 5


def test_init_state_single_vertex():
    state = init_state(ProcessConfig(n=1, k=1))
    assert state.degree[1] == 0


@pytest.mark.parametrize("n,k", [(0, 1), (1, 0), (0, 0), (-3, 2)])
def test_init_state_rejects_degenerate_sizes(n, k):
    with pytest.raises(ValueError):
        init_state(ProcessConfig(n=n, k=k))


def test_config_rejects_unknown_policies():
    with pytest.raises(ValueError):
        ProcessConfig(n=2, k=1, tie_break="nope").validate()
    with pytest.raises(ValueError):
        ProcessConfig(n=2, k=1, square_tie_break="avoid_square_then_lowest").validate()
    with pytest.raises(ValueError):
        ProcessConfig(n=2, k=1, loop_degree="three").validate()


def test_draw_squares_single_vertex():
    state = init_state(ProcessConfig(n=1, k=3))
    assert draw_squares(state, trial_rng(0)) == [1, 1, 1]


def test_draw_squares_uniformity_chi_square():
    # chi-square statistic over per-vertex counts, n draws on n vertices
    n = 100_000
    state = init_state(ProcessConfig(n=n, k=1))
    rng = trial_rng(123)
    draws = np.fromiter(
        (draw_squares(state, rng)[0] for _ in range(n)), dtype=np.int64, count=n
    )
    counts = np.bincount(draws, minlength=n + 1)[1:]
    chi2 = float(((counts - 1.0) ** 2).sum())  # expected count is 1 per vertex
    df = n - 1
    z = (chi2 - df) / np.sqrt(2.0 * df)
    assert abs(z) < 5.0


def test_two_squares_collide_half_the_time():
    state = init_state(ProcessConfig(n=2, k=2))
    rng = trial_rng(7)
    rounds = 10_000
    equal = sum(1 for _ in range(rounds) if len(set(draw_squares(state, rng))) == 1)
    assert abs(equal / rounds - 0.5) < 0.02


def test_draws_reproducible_across_generators():
    state = init_state(ProcessConfig(n=50, k=3))
    a = [draw_squares(state, trial_rng(9, 4)) for _ in range(5)]
    b = [draw_squares(state, trial_rng(9, 4)) for _ in range(5)]
    assert a == b
    sq1, _ = trial_streams(9, 4)
    sq2, _ = trial_streams(9, 4)
    assert sq1.integers(1, 51, size=15).tolist() == sq2.integers(1, 51, size=15).tolist()


def test_add_edge_basics():
    state = init_state(ProcessConfig(n=4, k=1))
    add_edge(state, 1, 2)
    assert state.degree[1] == state.degree[2] == 1
    assert state.t == 1
    add_edge(state, 3, 4)
    add_edge(state, 1, 3)
    assert sum(state.degree) == 6  # three edges, handshake identity


def test_loop_conventions():
    state = init_state(ProcessConfig(n=2, k=1))
    add_edge(state, 1, 1)
    assert state.degree[1] == 2
    state = init_state(ProcessConfig(n=2, k=1, loop_degree=LOOP_COUNTS_ONE))
    add_edge(state, 1, 1)
    assert state.degree[1] == 1


def test_min_degree_after_one_edge():
    state = init_state(ProcessConfig(n=2, k=1))
    add_edge(state, 1, 2)
    assert min_degree(state) == 1


def test_counts_match_full_rescan():
    state = init_state(ProcessConfig(n=50, k=1, record_edges=True))
    rng = trial_rng(11)
    for _ in range(100):
        u = int(rng.integers(1, 51))
        v = int(rng.integers(1, 51))
        add_edge(state, u, v)
    state.validate()
    for d in range(max(state.degree) + 1):
        assert count_degree(state, d) == sum(1 for v in range(1, 51) if state.degree[v] == d)
    assert len(state.edges) == 100
    assert state.buckets.count_at_or_below(2) == sum(
        1 for v in range(1, 51) if state.degree[v] <= 2
    )


@given(
    n=st.integers(2, 12),
    edges=st.lists(st.tuples(st.integers(0, 10**6), st.integers(0, 10**6)), max_size=60),
)
def test_handshake_and_buckets_after_every_operation(n, edges):
    state = init_state(ProcessConfig(n=n, k=1, debug=True))
    for a, b in edges:
        add_edge(state, a % n + 1, b % n + 1)
        state.validate()  # full rescan agrees after every operation
    assert sum(state.degree) == 2 * state.t


def test_lowest_vertex_queries():
    state = init_state(ProcessConfig(n=5, k=1))
    add_edge(state, 1, 2)
    b = state.buckets
    assert b.lowest(0) == 3
    assert b.lowest(0, exclude=3) == 4
    add_edge(state, 3, 4)
    add_edge(state, 5, 5)
    # all vertices now have degree >= 1; vertex 5 carries the loop
    assert min_degree(state) == 1
    assert b.lowest(1) == 1
    assert b.lowest(2) == 5
    assert b.lowest(2, exclude=5) == 5  # alone in its bucket


def test_state_from_degrees_matches_incremental():
    cfg = ProcessConfig(n=6, k=1)
    inc = init_state(cfg)
    for u, v in [(1, 2), (2, 3), (4, 4)]:
        add_edge(inc, u, v)
    bulk = state_from_degrees(cfg, list(inc.degree), t=inc.t)
    bulk.validate()
    assert bulk.buckets.min_nonempty == inc.buckets.min_nonempty
    for d in range(5):
        assert bulk.buckets.count(d) == inc.buckets.count(d)
