"""Drift systems for the three tracked processes and their solvers.

Each solver turns a drift system into the scaled-time constant of the
corresponding strategy: the minimum-degree system is chained phase by
phase (phase q ends when the count of degree-q vertices hits zero), the
matching system stops when the unsaturated fraction reaches a small
threshold, and the path system stops when the path fraction reaches its
target.  Solutions keep dense samples for trajectory comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .integrator import (
    DomainGuard,
    Event,
    IntegratorConfig,
    OdeFailure,
    OdeSystem,
    integrate,
)

PM_EPS_DEFAULT = 1e-14
HAM_X_STOP_DEFAULT = 1.0 - 1e-9
HAM_S_BUDGET = 3.0
PM_S_BUDGET = 2.0
PM_UPPER_MARGIN = 1e-5
SLOW_ENDGAME_SLOPE = 0.05


def _clip01(v: float) -> float:
    if v < 0.0:
        return 0.0
    if v > 1.0:
        return 1.0
    return v


def rhs_min_degree(q: int, k: int, l: int):
    """Drift of the degree counts (y_q..y_{l-1}) during phase q.

    The circle demotes one minimum-degree vertex per round; the selected
    square promotes a vertex of its own degree class, with class
    probabilities given by differences of k-th powers of tail fractions.
    Partial sums are clipped to [0, 1] before exponentiation.
    """
    if not 0 <= q < l:
        raise ValueError("phase index out of range")
    m = l - q

    def drift(_s: float, y: list[float]) -> list[float]:
        powers = [1.0]
        c = 0.0
        for v in y:
            c += v
            powers.append(_clip01(1.0 - c) ** k)
        out = []
        for i in range(m):
            d = powers[i + 1] - powers[i]  # -P(square in class q+i)
            if i == 0:
                d -= 1.0
            if i == 1:
                d += 1.0
            if i >= 1:
                d += powers[i - 1] - powers[i]
            out.append(d)
        return out

    return drift


def rhs_pm(k: int, guard_eps: float = 1e-15):
    """Drift of (saturated, red) fractions for the matching builder."""

    def drift(_s: float, y: list[float]) -> list[float]:
        x, r = y
        if x >= 1.0 - guard_eps:
            raise DomainGuard(f"saturated fraction {x!r} at the singular boundary")
        xr = _clip01(x - r) ** k
        xk = _clip01(x) ** k
        rk = _clip01(r) ** k
        dx = 2.0 * (1.0 - xr)
        dr = -2.0 * (1.0 - xr) * r / (1.0 - x) - xk + 2.0 * xr - rk
        return [dx, dr]

    return drift


def rhs_ham(k: int, guard_eps: float = 1e-15):
    """Drift of (path, matched, red) fractions for the path builder."""

    def drift(_s: float, y: list[float]) -> list[float]:
        x, yy, r = y
        if x >= 1.0 - guard_eps:
            raise DomainGuard(f"path fraction {x!r} at the singular boundary")
        w = 1.0 - x
        xy = _clip01(x + yy) ** k
        xk = _clip01(x) ** k
        x2r = _clip01(x - 2.0 * r) ** k
        r3 = _clip01(3.0 * r) ** k
        pb = xy - xk
        pc = xk - x2r
        dx = 2.0 * pb + (1.0 + yy / w) * pc
        dy = 2.0 * (1.0 - xy) - 2.0 * pb - 2.0 * pc * yy / w
        dr = -2.0 * r / w * pb - ((w + yy) * r / (w * w) + 1.0) * pc + (x2r - r3)
        return [dx, dy, dr]

    return drift


@dataclass
class PhaseSolution:
    """Solved trajectory with its breakpoints and terminal constant.

    ``grid_y`` holds one row per tracked coordinate on the uniform grid
    ``grid_s``; retired minimum-degree coordinates are zero-filled.
    """

    property: str
    k: int
    l: int | None
    breakpoints: list[float]
    constant: float
    terminal_state: list[float]
    labels: tuple[str, ...]
    grid_s: list[float] = field(repr=False, default_factory=list)
    grid_y: list[list[float]] = field(repr=False, default_factory=list)
    status: str = "event"
    warnings: list[str] = field(default_factory=list)
    n_steps: int = 0

    def coordinate(self, label: str) -> list[float]:
        return self.grid_y[self.labels.index(label)]


def solve_min_degree(k: int, l: int, cfg: IntegratorConfig | None = None) -> PhaseSolution:
    """Scaled rounds until minimum degree l, by chaining the l phases.

    Phase q tracks (y_q..y_{l-1}) from the previous phase's terminal values
    and ends at the localized zero of its leading coordinate; the constant
    is the last breakpoint.
    """
    if k < 1 or l < 1:
        raise ValueError("k and l must be >= 1")
    cfg = cfg or IntegratorConfig()
    y = [1.0] + [0.0] * (l - 1)
    s = 0.0
    breakpoints: list[float] = []
    grid_s: list[float] = []
    grid_y: list[list[float]] = [[] for _ in range(l)]
    total_steps = 0
    for q in range(l):
        system = OdeSystem(
            dim=l - q,
            drift=rhs_min_degree(q, k, l),
            events=(Event(lambda _s, yy: yy[0], direction=-1),),
        )
        res = integrate(system, cfg, y, s_budget=s + 5.0, s0=s)
        total_steps += res.n_steps
        if res.status != "event":
            raise OdeFailure(
                f"phase {q} of the degree system (k={k}, l={l}) ended without "
                f"its zero crossing: {res.status} {res.message}"
            )
        if cfg.dense_step:
            for j, sv in enumerate(res.dense_s):
                grid_s.append(sv)
                for c in range(q):
                    grid_y[c].append(0.0)
                for c in range(l - q):
                    grid_y[q + c].append(res.dense_y[j][c])
        s = res.s_end
        breakpoints.append(s)
        y = [max(0.0, v) for v in res.y_end[1:]]
    sol = PhaseSolution(
        property="min_degree",
        k=k,
        l=l,
        breakpoints=breakpoints,
        constant=s,
        terminal_state=y,
        labels=tuple(f"y{i}" for i in range(l)),
        grid_s=grid_s,
        grid_y=grid_y,
        n_steps=total_steps,
    )
    if sol.constant < l / 2:
        raise OdeFailure(f"degree constant {sol.constant} below the trivial bound {l/2}")
    return sol


def solve_pm(
    k: int, eps: float = PM_EPS_DEFAULT, cfg: IntegratorConfig | None = None
) -> PhaseSolution:
    """Scaled rounds until at most an eps fraction stays unsaturated.

    The event localizes 1 - x(s) = eps.  The endgame slows as x approaches
    1 (the slope decays like sqrt(1 - x)); a terminal slope below
    SLOW_ENDGAME_SLOPE is reported as a warning, not an error.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    cfg = cfg or IntegratorConfig()
    drift = rhs_pm(k, guard_eps=eps / 2)
    system = OdeSystem(
        dim=2,
        drift=drift,
        events=(Event(lambda _s, y: (1.0 - y[0]) - eps, direction=-1),),
    )
    res = integrate(system, cfg, [0.0, 0.0], s_budget=PM_S_BUDGET)
    if res.status != "event":
        raise OdeFailure(
            f"matching system (k={k}, eps={eps}) ended without reaching its "
            f"threshold: {res.status} {res.message}"
        )
    warnings = []
    slope = drift(res.s_end, res.y_end)[0]
    if slope < SLOW_ENDGAME_SLOPE:
        warnings.append(
            f"slow endgame: terminal dx/ds = {slope:.3e} below {SLOW_ENDGAME_SLOPE}"
        )
    sol = PhaseSolution(
        property="perfect_matching",
        k=k,
        l=None,
        breakpoints=[res.s_end],
        constant=res.s_end,
        terminal_state=res.y_end,
        labels=("x", "r"),
        grid_s=res.dense_s,
        grid_y=[[row[0] for row in res.dense_y], [row[1] for row in res.dense_y]],
        warnings=warnings,
        n_steps=res.n_steps,
    )
    if sol.constant < 0.5:
        raise OdeFailure(f"matching constant {sol.constant} below the trivial bound 0.5")
    return sol


def solve_ham(
    k: int, x_stop: float = HAM_X_STOP_DEFAULT, cfg: IntegratorConfig | None = None
) -> PhaseSolution:
    """Scaled rounds until the path fraction reaches x_stop.

    If the trajectory does not reach x_stop by s = 3 the budget exhaustion
    is reported in ``status`` with the constant pinned at 3.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 0.0 < x_stop < 1.0:
        raise ValueError("x_stop must lie in (0, 1)")
    cfg = cfg or IntegratorConfig()
    drift = rhs_ham(k, guard_eps=(1.0 - x_stop) / 2)
    system = OdeSystem(
        dim=3,
        drift=drift,
        events=(Event(lambda _s, y: y[0] - x_stop, direction=1),),
    )
    res = integrate(system, cfg, [0.0, 0.0, 0.0], s_budget=HAM_S_BUDGET)
    if res.status == "failed":
        raise OdeFailure(f"path system (k={k}) failed: {res.message}")
    warnings = []
    status = res.status
    if status == "budget":
        warnings.append("budget exhausted: path fraction did not reach x_stop by s=3")
    else:
        slope = drift(res.s_end, res.y_end)[0]
        if slope < SLOW_ENDGAME_SLOPE:
            warnings.append(
                f"slow endgame: terminal dx/ds = {slope:.3e} below {SLOW_ENDGAME_SLOPE}"
            )
    sol = PhaseSolution(
        property="hamilton_cycle",
        k=k,
        l=None,
        breakpoints=[res.s_end],
        constant=res.s_end,
        terminal_state=res.y_end,
        labels=("x", "y", "r"),
        grid_s=res.dense_s,
        grid_y=[
            [row[0] for row in res.dense_y],
            [row[1] for row in res.dense_y],
            [row[2] for row in res.dense_y],
        ],
        status=status,
        warnings=warnings,
        n_steps=res.n_steps,
    )
    if sol.constant < 1.0:
        raise OdeFailure(f"path constant {sol.constant} below the trivial bound 1.0")
    return sol


@dataclass(frozen=True)
class TableRecord:
    property: str
    k: int
    l: int | None
    constant: float
    kind: str  # "tau" | "lower" | "upper"


def emit_tables(
    property_name: str,
    k_range,
    l_range=None,
    eps: float = PM_EPS_DEFAULT,
    x_stop: float = HAM_X_STOP_DEFAULT,
    cfg: IntegratorConfig | None = None,
) -> list[TableRecord]:
    """Constant grids: degree targets, or matching/path bounds per k.

    The matching and path tables carry lower bounds from the degree system
    (targets 1 and 2 respectively); the matching upper bound includes the
    fixed completion margin.
    """
    records: list[TableRecord] = []
    if property_name == "min_degree":
        for l in l_range or range(1, 6):
            for k in k_range:
                sol = solve_min_degree(k, l, cfg)
                records.append(TableRecord("min_degree", k, l, sol.constant, "tau"))
    elif property_name == "perfect_matching":
        for k in k_range:
            lower = solve_min_degree(k, 1, cfg)
            upper = solve_pm(k, eps, cfg)
            records.append(TableRecord("perfect_matching", k, None, lower.constant, "lower"))
            records.append(
                TableRecord(
                    "perfect_matching", k, None, upper.constant + PM_UPPER_MARGIN, "upper"
                )
            )
    elif property_name == "hamilton_cycle":
        for k in k_range:
            lower = solve_min_degree(k, 2, cfg)
            upper = solve_ham(k, x_stop, cfg)
            records.append(TableRecord("hamilton_cycle", k, None, lower.constant, "lower"))
            records.append(TableRecord("hamilton_cycle", k, None, upper.constant, "upper"))
    else:
        raise ValueError(f"unknown property {property_name!r}")
    return records


def closed_form_degree1_constant(k: int, panels: int = 4000) -> float:
    """Independent check for the single-phase degree constant.

    With one tracked coordinate the phase reduces to a separable equation;
    the constant equals the integral of 1/(2 - z^k) over [0, 1], evaluated
    here by composite Simpson quadrature.
    """
    if k == 1:
        return math.log(2.0)
    h = 1.0 / panels
    total = 0.0
    for i in range(panels):
        z0 = i * h
        z1 = z0 + h
        zm = z0 + h / 2
        total += (
            1.0 / (2.0 - z0**k) + 4.0 / (2.0 - zm**k) + 1.0 / (2.0 - z1**k)
        ) * (h / 6.0)
    return total
