"""Adaptive explicit Runge-Kutta integration with terminal-event location.

The stepper is the classic embedded 4/5 pair (six active stages, first
same as last).  Events are scalar functions checked at accepted steps;
a sign change is localized by bisection, with in-step probes computed by
short fixed Runge-Kutta sub-steps from the step's left endpoint.  All
state is plain Python floats: the systems here have at most five
coordinates, where array round-trips would dominate the cost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence


class OdeFailure(RuntimeError):
    """Integration could not meet its contract (reported, never clamped)."""


class DomainGuard(Exception):
    """Raised by a drift function evaluated outside its guarded domain."""


@dataclass(frozen=True)
class IntegratorConfig:
    rtol: float = 1e-10
    atol: float = 1e-12
    max_step: float = 1e-3
    event_tol: float = 1e-12
    dense_step: float | None = 1e-3
    min_step: float = 1e-13
    max_steps: int = 2_000_000
    safety: float = 0.9
    min_factor: float = 0.2
    max_factor: float = 5.0

    def validated(self) -> "IntegratorConfig":
        if min(self.rtol, self.atol, self.max_step, self.event_tol, self.min_step) <= 0:
            raise ValueError("tolerances and step bounds must be positive")
        return self

    def halved_rtol(self) -> "IntegratorConfig":
        return replace(self, rtol=self.rtol / 2)


@dataclass(frozen=True)
class Event:
    """Scalar event g(s, y); fires on a sign crossing in ``direction``.

    direction -1: from positive to <= 0; +1: from negative to >= 0;
    0: any sign change.
    """

    fn: Callable[[float, Sequence[float]], float]
    direction: int = 0


@dataclass
class OdeSystem:
    dim: int
    drift: Callable[[float, Sequence[float]], list[float]]
    events: tuple[Event, ...] = ()


@dataclass
class IntegrationResult:
    status: str  # "event" | "budget" | "failed"
    s_end: float
    y_end: list[float]
    event_index: int | None
    dense_s: list[float]
    dense_y: list[list[float]]
    n_steps: int
    n_rhs: int
    message: str = ""


# stage coefficients of the embedded 4/5 pair
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84)
# difference between the 5th- and 4th-order weights (stage 7 = FSAL)
_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)


def _rk4_span(f, s0: float, y0: list[float], s1: float, substeps: int = 2) -> list[float]:
    """Fixed classical RK4 from (s0, y0) to s1; used for in-step probes."""
    dim = len(y0)
    h = (s1 - s0) / substeps
    y = list(y0)
    s = s0
    for _ in range(substeps):
        k1 = f(s, y)
        k2 = f(s + h / 2, [y[i] + h / 2 * k1[i] for i in range(dim)])
        k3 = f(s + h / 2, [y[i] + h / 2 * k2[i] for i in range(dim)])
        k4 = f(s + h, [y[i] + h * k3[i] for i in range(dim)])
        y = [y[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]) for i in range(dim)]
        s += h
    return y


def _crossed(g0: float, g1: float, direction: int) -> bool:
    if direction <= 0 and g0 > 0.0 >= g1:
        return True
    if direction >= 0 and g0 < 0.0 <= g1:
        return True
    return False


def integrate(
    system: OdeSystem,
    cfg: IntegratorConfig,
    initial: Sequence[float],
    s_budget: float,
    s0: float = 0.0,
) -> IntegrationResult:
    """Advance the system until an event fires or the budget is exhausted.

    Dense samples are collected on the uniform grid ``cfg.dense_step`` (when
    set) via cubic interpolation matched to values and slopes at the step
    ends.  Deterministic for fixed inputs.
    """
    cfg.validated()
    f = system.drift
    dim = system.dim
    y = [float(v) for v in initial]
    if len(y) != dim:
        raise ValueError("initial state has the wrong dimension")
    s = s0
    n_rhs = 0

    def call(ss: float, yy: list[float]) -> list[float]:
        nonlocal n_rhs
        n_rhs += 1
        return f(ss, yy)

    try:
        k1 = call(s, y)
    except DomainGuard as exc:
        raise OdeFailure(f"initial state outside guarded domain: {exc}") from exc
    g_prev = [ev.fn(s, y) for ev in system.events]

    dense_s: list[float] = []
    dense_y: list[list[float]] = []
    grid = cfg.dense_step
    next_grid = s0
    if grid:
        dense_s.append(s)
        dense_y.append(list(y))
        next_grid = s0 + grid

    h = min(cfg.max_step, max(cfg.min_step, (s_budget - s0) / 100.0))
    n_steps = 0
    atol, rtol = cfg.atol, cfg.rtol

    while s < s_budget - 1e-15:
        if n_steps >= cfg.max_steps:
            return IntegrationResult(
                "failed", s, y, None, dense_s, dense_y, n_steps, n_rhs,
                f"step limit {cfg.max_steps} reached at s={s!r}",
            )
        h = min(h, cfg.max_step, s_budget - s)
        if h < cfg.min_step:
            return IntegrationResult(
                "failed", s, y, None, dense_s, dense_y, n_steps, n_rhs,
                f"step size underflow at s={s!r}",
            )
        # one embedded trial step
        try:
            ks = [k1]
            for st in range(1, 6):
                a = _A[st]
                yt = [y[i] + h * sum(a[j] * ks[j][i] for j in range(st)) for i in range(dim)]
                ks.append(call(s + _C[st] * h, yt))
            y_new = [
                y[i] + h * sum(_B5[j] * ks[j][i] for j in range(6)) for i in range(dim)
            ]
            k7 = call(s + h, y_new)
        except DomainGuard:
            h *= 0.5
            continue
        ks.append(k7)
        err = 0.0
        for i in range(dim):
            e = h * sum(_E[j] * ks[j][i] for j in range(7))
            scale = atol + rtol * max(abs(y[i]), abs(y_new[i]))
            q = e / scale
            err += q * q
        err = math.sqrt(err / dim)
        if err > 1.0:
            h *= max(cfg.min_factor, cfg.safety * err ** -0.2)
            continue

        n_steps += 1
        s_new = s + h

        # terminal events, localized by bisection anchored at the step start
        fired = None
        for idx, ev in enumerate(system.events):
            g1 = ev.fn(s_new, y_new)
            if _crossed(g_prev[idx], g1, ev.direction):
                fired = idx
                break
        if fired is not None:
            ev = system.events[fired]
            lo, hi = s, s_new
            y_hi = y_new
            while hi - lo > cfg.event_tol:
                mid = 0.5 * (lo + hi)
                try:
                    y_mid = _rk4_span(f, s, y, mid)
                except DomainGuard:
                    y_mid = _hermite(s, y, k1, s_new, y_new, k7, mid)
                if _crossed(g_prev[fired], ev.fn(mid, y_mid), ev.direction):
                    hi, y_hi = mid, y_mid
                else:
                    lo = mid
            if grid:
                while next_grid <= hi + 1e-15:
                    dense_s.append(next_grid)
                    dense_y.append(_hermite(s, y, k1, s_new, y_new, k7, next_grid))
                    next_grid += grid
                dense_s.append(hi)
                dense_y.append(list(y_hi))
            return IntegrationResult(
                "event", hi, y_hi, fired, dense_s, dense_y, n_steps, n_rhs
            )

        if grid:
            while next_grid <= s_new + 1e-15:
                dense_s.append(next_grid)
                dense_y.append(_hermite(s, y, k1, s_new, y_new, k7, next_grid))
                next_grid += grid

        s, y, k1 = s_new, y_new, k7
        g_prev = [ev.fn(s, y) for ev in system.events]
        if err == 0.0:
            h *= cfg.max_factor
        else:
            h *= min(cfg.max_factor, max(cfg.min_factor, cfg.safety * err ** -0.2))

    return IntegrationResult("budget", s, y, None, dense_s, dense_y, n_steps, n_rhs)


def _hermite(
    s0: float,
    y0: list[float],
    f0: list[float],
    s1: float,
    y1: list[float],
    f1: list[float],
    s: float,
) -> list[float]:
    """Cubic interpolation matching values and slopes at both step ends."""
    h = s1 - s0
    t = (s - s0) / h
    t2 = t * t
    t3 = t2 * t
    a = 2 * t3 - 3 * t2 + 1
    b = t3 - 2 * t2 + t
    c = -2 * t3 + 3 * t2
    d = t3 - t2
    return [
        a * y0[i] + b * h * f0[i] + c * y1[i] + d * h * f1[i] for i in range(len(y0))
    ]
