"""Greedy minimum-degree strategy and its variants.

The greedy step selects an offered square of minimum degree and places the
circle on a minimum-degree vertex.  Baseline circle rules (uniform over all
vertices, or the maximum-degree vertex) are provided for dominance
experiments, and a two-phase sequential-circles algorithm plus the
single-purpose greedy routines cover the large-parameter regimes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..process import (
    GraphState,
    ProcessConfig,
    TIE_AVOID,
    TIE_LOWEST,
    TIE_UNIFORM,
    LOOP_COUNTS_ONE,
    add_edge,
    init_state,
    state_from_degrees,
)
from ..indexed import IndexedSet
from ..rng import SquareSource, trial_streams
from .common import StepOutcome


def select_square_index(degree: list[int], squares: list[int], policy: str, rng) -> int:
    """0-based index of a minimum-degree offer under the given tie policy."""
    best = 0
    best_d = degree[squares[0]]
    if policy == TIE_UNIFORM:
        ties = [0]
        for i in range(1, len(squares)):
            d = degree[squares[i]]
            if d < best_d:
                best_d = d
                ties = [i]
            elif d == best_d:
                ties.append(i)
        return ties[rng.integers(len(ties))]
    for i in range(1, len(squares)):
        d = degree[squares[i]]
        if d < best_d:
            best_d = d
            best = i
    return best


def _place_circle(state: GraphState, u: int, rng) -> int:
    b = state.buckets
    d = b.min_nonempty
    policy = state.config.tie_break
    if policy == TIE_AVOID:
        return b.lowest(d, exclude=u)
    if policy == TIE_LOWEST:
        return b.lowest(d)
    return b.sample(d, rng)


def mindeg_step(state: GraphState, squares: list[int], rng) -> StepOutcome:
    """One greedy round: minimum-degree square, circle on a minimum-degree vertex."""
    i = select_square_index(state.degree, squares, state.config.square_tie_break, rng)
    u = squares[i]
    v = _place_circle(state, u, rng)
    add_edge(state, u, v)
    return StepOutcome("greedy", i + 1, u, v, True)


def uniform_circle_step(state: GraphState, squares: list[int], rng) -> StepOutcome:
    """Baseline: same square rule, circle uniform over all vertices."""
    i = select_square_index(state.degree, squares, state.config.square_tie_break, rng)
    u = squares[i]
    v = int(rng.integers(1, state.config.n + 1))
    add_edge(state, u, v)
    return StepOutcome("uniform", i + 1, u, v, True)


def max_degree_circle_step(state: GraphState, squares: list[int], rng) -> StepOutcome:
    """Baseline: same square rule, circle on a maximum-degree vertex."""
    i = select_square_index(state.degree, squares, state.config.square_tie_break, rng)
    u = squares[i]
    b = state.buckets
    v = b.lowest(b.max_nonempty)
    add_edge(state, u, v)
    return StepOutcome("max_degree", i + 1, u, v, True)


MIN_DEGREE_STRATEGIES = {
    "s0": mindeg_step,
    "uniform_circle": uniform_circle_step,
    "max_degree_circle": max_degree_circle_step,
}


def case_probabilities_mindeg(counts, n, k: int, q: int = 0) -> list[float]:
    """P(selected square has degree j), j = q .. q+len(counts)-1.

    ``counts[j-q]`` is the number of degree-j vertices; entries above the
    tracked window are implicit.  Accepts fractions of n by passing ``n=1``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    total = 0
    for c in counts:
        if c < 0:
            raise ValueError("degree counts must be nonnegative")
        total += c
    if total > n * (1 + 1e-12):
        raise ValueError("degree counts exceed the vertex count")
    probs = []
    cum = 0.0
    prev = 1.0
    for c in counts:
        cum += c / n
        base = 1.0 - cum
        if base < 0.0:
            base = 0.0
        cur = base**k
        probs.append(prev - cur)
        prev = cur
    return probs


def mindeg_expected_changes(y, k: int, q: int) -> list[float]:
    """Expected one-round change of each tracked degree count (as fractions).

    ``y[i]`` is the fraction of vertices at degree ``q+i``.  Composed from
    the square-class probabilities: the circle always promotes one
    minimum-degree vertex, the selected square promotes a vertex of its own
    degree class.
    """
    probs = case_probabilities_mindeg(y, 1.0, k, q)
    out = []
    for m in range(len(y)):
        d = 0.0
        if m == 0:
            d -= 1.0
        if m == 1:
            d += 1.0
        d -= probs[m]
        if m >= 1:
            d += probs[m - 1]
        out.append(d)
    return out


@dataclass
class MinDegreeTrace:
    """Hitting-time record of one minimum-degree run."""

    n: int
    k: int
    l: int
    rounds: int
    phase_ends: list[int]
    samples: list[tuple[int, ...]]  # (round, count at degree 0, ..., l-1)


def run_min_degree(
    config: ProcessConfig,
    l: int,
    trial_index: int = 0,
    strategy: str = "s0",
    sample_stride: int = 0,
    validate_every: int = 0,
    streams=None,
) -> MinDegreeTrace:
    """Play until the minimum degree reaches ``l``; record phase breakpoints.

    ``sample_stride`` > 0 additionally records the per-degree counts every
    that many rounds.  ``validate_every`` > 0 runs a full state validation
    periodically and at termination (debug runs).  ``streams`` overrides the
    default (seed, trial_index)-derived generator pair, letting mass
    experiments amortize generator construction.
    """
    if l < 1:
        raise ValueError("target minimum degree must be >= 1")
    step = MIN_DEGREE_STRATEGIES[strategy]
    state = init_state(config)
    rng_sq, rng_ch = streams if streams is not None else trial_streams(config.seed, trial_index)
    src = SquareSource(config.n, config.k, rng_sq)
    phase_ends = [0] * l
    samples: list[tuple[int, ...]] = []
    buckets = state.buckets
    reached = 0
    if sample_stride:
        samples.append((0, *(buckets.count(d) for d in range(l))))
    while True:
        md = buckets.min_nonempty
        if md > reached:
            for qq in range(reached, min(md, l)):
                phase_ends[qq] = state.t
            reached = md
        if md >= l:
            break
        step(state, src.next_round(), rng_ch)
        if sample_stride and state.t % sample_stride == 0:
            samples.append((state.t, *(buckets.count(d) for d in range(l))))
        if validate_every and state.t % validate_every == 0:
            state.validate()
    if validate_every:
        state.validate()
    return MinDegreeTrace(config.n, config.k, l, state.t, phase_ends, samples)


@dataclass
class TwoPhaseTrace:
    total_rounds: int
    phase1_rounds: int
    phase2_rounds: int


def two_phase_mindeg(config: ProcessConfig, l: int, trial_index: int = 0) -> TwoPhaseTrace:
    """Sequential circles for l*n/2 rounds, then repair remaining deficits.

    Phase 1 ignores the offered squares (the first offer lands) and puts the
    round-i circle on vertex ((i-1) mod n) + 1.  Phase 2 plays the greedy
    step until the minimum degree reaches l.  Phase 1 is evaluated in bulk:
    the resulting degree vector is the bincount of the landed squares plus
    the deterministic circle counts.
    """
    if l < 1:
        raise ValueError("target minimum degree must be >= 1")
    config.validate()
    n = config.n
    m = (l * n) // 2
    rng_sq, rng_ch = trial_streams(config.seed, trial_index)
    landed = rng_sq.integers(1, n + 1, size=m)
    deg = np.bincount(landed, minlength=n + 1)
    full, rem = divmod(m, n)
    deg[1:] += full
    if rem:
        deg[1 : rem + 1] += 1
    if config.loop_degree == LOOP_COUNTS_ONE:
        # a loop (square == circle) contributes 1, not 2
        rounds = np.arange(1, m + 1)
        circles = (rounds - 1) % n + 1
        loop_vertices = circles[landed == circles]
        if loop_vertices.size:
            deg -= np.bincount(loop_vertices, minlength=n + 1)
    state = state_from_degrees(config, deg.tolist(), t=m)
    src = SquareSource(n, config.k, rng_sq)
    while state.buckets.min_nonempty < l:
        mindeg_step(state, src.next_round(), rng_ch)
    return TwoPhaseTrace(state.t, m, state.t - m)


def greedy_pm_large_k(config: ProcessConfig, trial_index: int = 0) -> int:
    """Match an unsaturated square with a random unsaturated partner,
    whenever one is offered, for exactly n/2 rounds.

    The partner is uniform over all unsaturated vertices, so a self-hit
    wastes the round; rounds with no unsaturated square pass.  Returns the
    number of unsaturated vertices left after n/2 rounds.
    """
    config.validate()
    n = config.n
    if n % 2:
        raise ValueError("perfect matching needs an even vertex count")
    unsat = IndexedSet(range(1, n + 1))
    rng_sq, rng_ch = trial_streams(config.seed, trial_index)
    src = SquareSource(n, config.k, rng_sq)
    contains = unsat.__contains__
    for _ in range(n // 2):
        squares = src.next_round()
        if not unsat:
            continue
        u = 0
        for s in squares:
            if contains(s):
                u = s
                break
        if not u:
            continue
        v = unsat.sample(rng_ch)
        if v != u:
            unsat.discard(u)
            unsat.discard(v)
    return len(unsat)


def greedy_ham_path(config: ProcessConfig, trial_index: int = 0) -> int:
    """Extend a path whenever a square lands off it, for n rounds.

    Returns the number of off-path vertices after n rounds.  The first
    extension joins two off-path vertices; later ones append the square to
    an endpoint.
    """
    config.validate()
    n = config.n
    off = IndexedSet(range(1, n + 1))
    tail = 0
    rng_sq, rng_ch = trial_streams(config.seed, trial_index)
    src = SquareSource(n, config.k, rng_sq)
    contains = off.__contains__
    for _ in range(n):
        squares = src.next_round()
        if not off:
            continue
        u = 0
        for s in squares:
            if contains(s):
                u = s
                break
        if not u:
            continue
        if tail == 0:
            if len(off) == 1:
                continue  # a path needs two vertices
            v = off.sample(rng_ch)
            while v == u:
                v = off.sample(rng_ch)
            off.discard(u)
            off.discard(v)
            tail = u
        else:
            off.discard(u)
            tail = u
    return len(off)
