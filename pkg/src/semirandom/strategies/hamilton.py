"""Adaptive path builder for the k-choice process.

The builder grows one path toward a Hamiltonian cycle.  Off-path vertices
are unsaturated or matched in pairs; on-path vertices are red, green,
useless or permissible.  A red vertex holds exactly one pending off-path
edge; its path neighbours are green and a square on a green vertex absorbs
the pending edge's endpoint (plus its mate when matched).  Useless vertices
keep red vertices at path distance at least 3 apart, and the useless class
is padded with arbitrary uncoloured path vertices up to twice the red
count.  Squares are consumed greedily in the priority order: unsaturated,
matched, green, permissible, (useless/red = pass).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..indexed import IndexedSet
from ..process import GraphState, ProcessConfig, add_edge, init_state
from ..rng import SquareSource, trial_streams
from .common import StepOutcome

OFF_UNSAT = 0
OFF_MATCHED = 1
RED = 2
GREEN = 3
USELESS = 4
PERMISSIBLE = 5

_RANK = {OFF_UNSAT: 0, OFF_MATCHED: 1, GREEN: 2, PERMISSIBLE: 3, USELESS: 4, RED: 4}


class HamState:
    """Path, matching and colour bookkeeping of the path builder."""

    __slots__ = (
        "n",
        "label",
        "nxt",
        "prv",
        "head",
        "tail",
        "mate",
        "red_target",
        "red_at",
        "unsat",
        "matched",
        "permissible",
        "padding",
        "greens",
        "useless_struct",
        "reds",
        "debug",
    )

    def __init__(self, n: int, debug: bool = False):
        if n < 1:
            raise ValueError("vertex count must be >= 1")
        self.n = n
        self.label = [OFF_UNSAT] * (n + 1)
        self.nxt = [0] * (n + 1)
        self.prv = [0] * (n + 1)
        self.head = 0
        self.tail = 0
        self.mate = [0] * (n + 1)
        self.red_target = [0] * (n + 1)
        self.red_at: dict[int, list[int]] = {}
        self.unsat = IndexedSet(range(1, n + 1))
        self.matched = IndexedSet()
        self.permissible = IndexedSet()
        self.padding = IndexedSet()
        self.greens: set[int] = set()
        self.useless_struct: set[int] = set()
        self.reds: set[int] = set()
        self.debug = debug

    @property
    def X(self) -> int:
        return self.n - len(self.unsat) - len(self.matched)

    @property
    def Y(self) -> int:
        return len(self.matched)

    @property
    def R(self) -> int:
        return len(self.reds)

    @property
    def green_count(self) -> int:
        return len(self.greens)

    @property
    def useless_count(self) -> int:
        return len(self.useless_struct) + len(self.padding)

    def clone(self) -> "HamState":
        other = HamState.__new__(HamState)
        other.n = self.n
        other.label = list(self.label)
        other.nxt = list(self.nxt)
        other.prv = list(self.prv)
        other.head = self.head
        other.tail = self.tail
        other.mate = list(self.mate)
        other.red_target = list(self.red_target)
        other.red_at = {v: list(r) for v, r in self.red_at.items()}
        other.unsat = IndexedSet(self.unsat.as_list())
        other.matched = IndexedSet(self.matched.as_list())
        other.permissible = IndexedSet(self.permissible.as_list())
        other.padding = IndexedSet(self.padding.as_list())
        other.greens = set(self.greens)
        other.useless_struct = set(self.useless_struct)
        other.reds = set(self.reds)
        other.debug = self.debug
        return other

    def path_order(self) -> list[int]:
        order = []
        v = self.head
        while v:
            order.append(v)
            v = self.nxt[v]
        return order

    def check_quick(self) -> None:
        """O(1) identities kept after every step in debug mode."""
        total = (
            len(self.unsat)
            + len(self.matched)
            + len(self.greens)
            + len(self.useless_struct)
            + len(self.padding)
            + len(self.permissible)
            + len(self.reds)
        )
        assert total == self.n, "the six classes must partition the vertices"
        assert len(self.matched) % 2 == 0, "matched vertices come in pairs"
        r = len(self.reds)
        assert len(self.greens) <= 2 * r
        assert self.useless_count <= 2 * r
        assert self.useless_count == 2 * r or not self.permissible

    def validate(self) -> None:
        """Full structural sweep; rebuilds the classification from scratch."""
        n = self.n
        lab = self.label
        order = self.path_order()
        pos = {v: i for i, v in enumerate(order)}
        assert len(pos) == len(order), "path revisits a vertex"
        assert len(order) == self.X
        if order:
            assert self.prv[order[0]] == 0 and self.nxt[order[-1]] == 0
            assert self.head == order[0] and self.tail == order[-1]
        else:
            assert self.head == 0 and self.tail == 0
        # off-path vertices
        for v in range(1, n + 1):
            if lab[v] == OFF_UNSAT:
                assert v in self.unsat and v not in pos
                assert self.mate[v] == 0
            elif lab[v] == OFF_MATCHED:
                assert v in self.matched and v not in pos
                m = self.mate[v]
                assert m and self.mate[m] == v and m != v and lab[m] == OFF_MATCHED
            else:
                assert v in pos
        assert len(self.matched) % 2 == 0
        # red edges
        for v in range(1, n + 1):
            if lab[v] == RED:
                assert v in self.reds
                z = self.red_target[v]
                assert lab[z] in (OFF_UNSAT, OFF_MATCHED), "pending edges end off the path"
                assert v in self.red_at.get(z, [])
            else:
                assert v not in self.reds and self.red_target[v] == 0
        listed = sum(len(r) for r in self.red_at.values())
        assert listed == len(self.reds)
        for z, rs in self.red_at.items():
            for x in rs:
                assert lab[x] == RED and self.red_target[x] == z
        # red separation and rebuilt colour classes
        red_pos = sorted(pos[v] for v in self.reds)
        for a, b in zip(red_pos, red_pos[1:]):
            assert b - a >= 3, "red vertices must sit at path distance >= 3"
        expect_green = set()
        expect_useless = set()
        for v in self.reds:
            i = pos[v]
            for j in (i - 1, i + 1):
                if 0 <= j < len(order):
                    expect_green.add(order[j])
            for j in (i - 2, i + 2):
                if 0 <= j < len(order):
                    expect_useless.add(order[j])
        expect_useless -= expect_green
        assert self.greens == expect_green
        assert self.useless_struct == expect_useless
        for v in self.padding:
            assert v in pos and v not in expect_green and v not in expect_useless
            assert v not in self.reds
        for v in order:
            if v in self.reds:
                assert lab[v] == RED
            elif v in expect_green:
                assert lab[v] == GREEN
            elif v in expect_useless or v in self.padding:
                assert lab[v] == USELESS
            else:
                assert lab[v] == PERMISSIBLE and v in self.permissible
        r = len(self.reds)
        assert len(self.greens) >= max(0, 2 * r - 4), "at most two red path endpoints"
        assert self.useless_count <= 2 * r
        assert self.useless_count == 2 * r or not self.permissible


def classify_ham(label: list[int], squares: list[int]) -> tuple[int, int]:
    """(priority rank, index of first square achieving it)."""
    best = 4
    best_i = 0
    for i, s in enumerate(squares):
        r = _RANK[label[s]]
        if r < best:
            if r == 0:
                return 0, i
            best = r
            best_i = i
    return best, best_i


def _near(h: HamState, v: int, out: set[int]) -> None:
    """Collect v and its on-path neighbours up to distance 2."""
    if not v:
        return
    lab = h.label
    if lab[v] in (OFF_UNSAT, OFF_MATCHED):
        return
    out.add(v)
    for w in (h.prv[v], h.nxt[v]):
        if w:
            out.add(w)
            for z in (h.prv[w], h.nxt[w]):
                if z:
                    out.add(z)


def _enter_path(h: HamState, v: int) -> None:
    """Provisionally file a newly absorbed vertex as permissible."""
    h.label[v] = PERMISSIBLE
    h.permissible.add(v)


def _uncolour_red(h: HamState, x: int, drop_target_entry: bool = True) -> None:
    """Remove x's pending edge and return x to the uncoloured pool."""
    z = h.red_target[x]
    if drop_target_entry:
        rs = h.red_at.get(z)
        rs.remove(x)
        if not rs:
            del h.red_at[z]
    h.red_target[x] = 0
    h.reds.discard(x)
    h.label[x] = PERMISSIBLE
    h.permissible.add(x)


def _dead_reds(h: HamState, absorbed) -> list[int]:
    """Reds whose pending edge points at a vertex being absorbed."""
    dead: list[int] = []
    for w in absorbed:
        rs = h.red_at.pop(w, None)
        if rs:
            dead.extend(rs)
    return dead


def _splice(h: HamState, a: int, b: int, chain: tuple[int, ...]) -> None:
    """Replace the path edge a-b by the path segment a-chain-b."""
    if h.nxt[a] == b:
        seq = (a, *chain, b)
    else:
        seq = (b, *reversed(chain), a)
    for i in range(len(seq) - 1):
        h.nxt[seq[i]] = seq[i + 1]
        h.prv[seq[i + 1]] = seq[i]


def _struct_class(h: HamState, v: int) -> int:
    """GREEN next to a red, USELESS at exact distance 2, else PERMISSIBLE."""
    lab = h.label
    p = h.prv[v]
    q = h.nxt[v]
    if (p and lab[p] == RED) or (q and lab[q] == RED):
        return GREEN
    for w in (p, q):
        if w:
            for z in (h.prv[w], h.nxt[w]):
                if z and z != v and lab[z] == RED:
                    return USELESS
    return PERMISSIBLE


def _reclassify(h: HamState, vertices: set[int]) -> None:
    lab = h.label
    for v in vertices:
        L = lab[v]
        if L in (OFF_UNSAT, OFF_MATCHED, RED):
            continue
        cls = _struct_class(h, v)
        if cls == GREEN:
            if L == GREEN:
                continue
            if L == PERMISSIBLE:
                h.permissible.discard(v)
            elif v in h.useless_struct:
                h.useless_struct.discard(v)
            else:
                h.padding.discard(v)
            h.greens.add(v)
            lab[v] = GREEN
        elif cls == USELESS:
            if v in h.useless_struct:
                continue
            if L == GREEN:
                h.greens.discard(v)
            elif L == PERMISSIBLE:
                h.permissible.discard(v)
            else:
                h.padding.discard(v)
            h.useless_struct.add(v)
            lab[v] = USELESS
        else:
            if L == PERMISSIBLE or v in h.padding:
                continue  # padding stays useless by choice
            if L == GREEN:
                h.greens.discard(v)
            else:
                h.useless_struct.discard(v)
            h.permissible.add(v)
            lab[v] = PERMISSIBLE


def _rebalance_padding(h: HamState) -> None:
    """Keep struct + padded useless at twice the red count when possible."""
    target = 2 * len(h.reds)
    cur = len(h.useless_struct) + len(h.padding)
    while cur > target and h.padding:
        v = h.padding.pop_arbitrary()
        h.label[v] = PERMISSIBLE
        h.permissible.add(v)
        cur -= 1
    while cur < target and h.permissible:
        v = h.permissible.pop_arbitrary()
        h.label[v] = USELESS
        h.padding.add(v)
        cur += 1


def ham_step(h: HamState, squares: list[int], rng) -> StepOutcome:
    """Play one round; mutates ``h`` and reports the chosen edge."""
    rank, i = classify_ham(h.label, squares)
    u = squares[i]
    lab = h.label
    if rank == 0:  # match two unsaturated vertices
        v = h.unsat.sample(rng)
        if v == u:
            return StepOutcome("a", i + 1, u, v, False)
        lab[u] = OFF_MATCHED
        lab[v] = OFF_MATCHED
        h.mate[u] = v
        h.mate[v] = u
        h.unsat.discard(u)
        h.unsat.discard(v)
        h.matched.add(u)
        h.matched.add(v)
        if h.debug:
            h.check_quick()
        return StepOutcome("a", i + 1, u, v, True)

    if rank == 1:  # append u and its mate at an endpoint
        m = h.mate[u]
        h.matched.discard(u)
        h.matched.discard(m)
        h.mate[u] = 0
        h.mate[m] = 0
        old_tail = h.tail
        if old_tail == 0:
            v = m  # no endpoint yet: the pair itself starts the path
            h.head = u
        else:
            v = old_tail
            h.nxt[old_tail] = u
            h.prv[u] = old_tail
        h.nxt[u] = m
        h.prv[m] = u
        h.tail = m
        _enter_path(h, u)
        _enter_path(h, m)
        dead = _dead_reds(h, (u, m))
        for x in dead:
            _uncolour_red(h, x, drop_target_entry=False)
        affected: set[int] = set()
        for w in (old_tail, u, m, *dead):
            _near(h, w, affected)
        _reclassify(h, affected)
        _rebalance_padding(h)
        if h.debug:
            h.check_quick()
        return StepOutcome("b", i + 1, u, v, True)

    if rank == 2:  # absorb through the pending edge of u's red neighbour
        p, q_ = h.prv[u], h.nxt[u]
        y = p if (p and lab[p] == RED) else q_
        assert y and lab[y] == RED, "a green vertex must have a red neighbour"
        z = h.red_target[y]
        _uncolour_red(h, y)
        if lab[z] == OFF_UNSAT:
            case = "c'"
            v = z
            h.unsat.discard(z)
            _enter_path(h, z)
            absorbed: tuple[int, ...] = (z,)
            _splice(h, u, y, (z,))
        else:
            case = "c''"
            q = h.mate[z]
            v = q
            h.matched.discard(z)
            h.matched.discard(q)
            h.mate[z] = 0
            h.mate[q] = 0
            _enter_path(h, z)
            _enter_path(h, q)
            absorbed = (z, q)
            _splice(h, u, y, (q, z))
        dead = _dead_reds(h, absorbed)
        for x in dead:
            _uncolour_red(h, x, drop_target_entry=False)
        affected = set()
        for w in (u, y, *absorbed, *dead):
            _near(h, w, affected)
        _reclassify(h, affected)
        _rebalance_padding(h)
        if h.debug:
            h.check_quick()
        return StepOutcome(case, i + 1, u, v, True)

    if rank == 3:  # colour a new pending edge from a permissible vertex
        nm = len(h.matched)
        nu = len(h.unsat)
        assert nm + nu > 0, "an incomplete path leaves off-path vertices"
        j = int(rng.integers(nm + nu))
        v = h.matched.at(j) if j < nm else h.unsat.at(j - nm)
        h.permissible.discard(u)
        lab[u] = RED
        h.reds.add(u)
        h.red_target[u] = v
        h.red_at.setdefault(v, []).append(u)
        affected = set()
        _near(h, u, affected)
        _reclassify(h, affected)
        _rebalance_padding(h)
        if h.debug:
            h.check_quick()
        return StepOutcome("d", i + 1, u, v, True)

    v = int(rng.integers(1, h.n + 1))  # pass
    return StepOutcome("e", i + 1, u, v, False)


def ham_case_probabilities(X, Y, R, n, k: int, n_green=None, n_useless=None):
    """(P_a..P_e) for the five square classes at the given counts.

    By default the green and useless classes are taken at their nominal
    sizes (twice the red count each); pass exact sizes to match a concrete
    state.  Accepts fractions of n via ``n=1``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if n_green is None:
        n_green = 2 * R
    if n_useless is None:
        n_useless = 2 * R
    if min(X, Y, R, n_green, n_useless) < 0:
        raise ValueError("counts must be nonnegative")
    if X + Y > n * (1 + 1e-12):
        raise ValueError("on-path plus matched vertices exceed the vertex count")
    if R + n_green + n_useless > X * (1 + 1e-12):
        raise ValueError("coloured classes exceed the path length")
    f = 1.0 / n
    xy = ((X + Y) * f) ** k
    x = (X * f) ** k
    xg = ((X - n_green) * f) ** k
    ru = ((R + n_useless) * f) ** k
    return 1.0 - xy, xy - x, x - xg, xg - ru, ru


def ham_expected_changes(x: float, y: float, r: float, k: int) -> tuple[float, float, float]:
    """Expected one-round change of (path, matched, red) fractions.

    Composed from the case probabilities: appending absorbs 2, a pending
    edge absorbs 1 plus the mate share y/(1-x); each absorbed vertex kills
    pending edges at rate r/(1-x).
    """
    if x >= 1.0:
        raise ValueError("path fraction must stay below 1")
    pa, pb, pc, pd, _pe = ham_case_probabilities(x, y, r, 1.0, k)
    w = 1.0 - x
    dx = 2.0 * pb + (1.0 + y / w) * pc
    dy = 2.0 * pa - 2.0 * pb - 2.0 * pc * y / w
    dr = -2.0 * r / w * pb - ((w + y) * r / (w * w) + 1.0) * pc + pd
    return dx, dy, dr


@dataclass
class HamTrace:
    """Round counts of one path-builder run; threshold and completion split."""

    n: int
    k: int
    x_stop: float
    threshold_round: int
    completion_rounds: int
    total_rounds: int
    samples: list[tuple[int, int, int, int]]  # (t, on-path, matched, red)
    cycle: list[int] | None


def ham_completion(h: HamState, graph: GraphState, src: SquareSource, rng) -> tuple[int, list[int]]:
    """Finish the path, then close the cycle; returns (extra rounds, cycle).

    While vertices remain off the path the regular step keeps absorbing
    them.  Once the path spans all vertices, rounds pass until a square
    lands on an endpoint, which is then joined to the opposite endpoint.
    """
    n = h.n
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    start = graph.t
    while h.X < n:
        out = ham_step(h, src.next_round(), rng)
        add_edge(graph, out.square, out.circle)
    while True:
        squares = src.next_round()
        hit = 0
        for s in squares:
            if s == h.head or s == h.tail:
                hit = s
                break
        if hit:
            other = h.tail if hit == h.head else h.head
            add_edge(graph, hit, other)
            break
        add_edge(graph, squares[0], int(rng.integers(1, n + 1)))
    cycle = h.path_order()
    verify_hamiltonian_cycle(cycle, n)
    return graph.t - start, cycle


def verify_hamiltonian_cycle(cycle: list[int], n: int) -> None:
    if n < 3:
        raise AssertionError("a cycle needs at least 3 vertices")
    if len(cycle) != n or set(cycle) != set(range(1, n + 1)):
        raise AssertionError("cycle must visit every vertex exactly once")


def ham_run(
    config: ProcessConfig,
    x_stop: float = 0.99,
    trial_index: int = 0,
    sample_stride: int | None = None,
    complete: bool = True,
    validate_every: int = 0,
) -> HamTrace:
    """Run the path builder from scratch.

    The main phase ends when the path covers ``x_stop * n`` vertices;
    completion (finishing the path and closing the cycle) is measured
    separately and never folded into the threshold count.
    """
    config.validate()
    n = config.n
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    if not 0.0 < x_stop <= 1.0:
        raise ValueError("x_stop must lie in (0, 1]")
    graph = init_state(config)
    h = HamState(n, debug=config.debug)
    rng_sq, rng_ch = trial_streams(config.seed, trial_index)
    src = SquareSource(n, config.k, rng_sq)
    stride = sample_stride if sample_stride is not None else max(1, n // 100)
    cut = x_stop * n
    samples = [(0, 0, 0, 0)] if stride else []
    while h.X < cut:
        out = ham_step(h, src.next_round(), rng_ch)
        add_edge(graph, out.square, out.circle)
        if stride and graph.t % stride == 0:
            samples.append((graph.t, h.X, h.Y, h.R))
        if validate_every and graph.t % validate_every == 0:
            h.validate()
            graph.validate()
    threshold_round = graph.t
    completion = 0
    cycle = None
    if complete:
        completion, cycle = ham_completion(h, graph, src, rng_ch)
    if validate_every:
        h.validate()
        graph.validate()
    return HamTrace(n, config.k, x_stop, threshold_round, completion, graph.t, samples, cycle)
