"""Small statistics kit: chi-square and normal tails, means and CIs.

Implemented directly (regularized incomplete gamma via series/continued
fraction) so experiments carry no heavyweight dependency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_Z95 = 1.959963984540054
_MAX_ITER = 300
_EPS = 3e-14


def _gamma_series(a: float, x: float) -> float:
    """P(a, x) by series; valid for x < a + 1."""
    ap = a
    total = term = 1.0 / a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_cf(a: float, x: float) -> float:
    """Q(a, x) by continued fraction; valid for x >= a + 1."""
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def gammainc_upper_reg(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x)."""
    if a <= 0 or x < 0:
        raise ValueError("requires a > 0 and x >= 0")
    if x == 0.0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _gamma_series(a, x)
    return _gamma_cf(a, x)


def chi2_sf(x: float, df: int) -> float:
    """Survival function of the chi-square distribution."""
    if df < 1:
        raise ValueError("df must be >= 1")
    return gammainc_upper_reg(df / 2.0, x / 2.0)


def normal_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


@dataclass(frozen=True)
class ChiSquareReport:
    statistic: float
    df: int
    p_value: float
    observed: tuple[int, ...]
    expected: tuple[float, ...]


def chi_square_test(observed, probabilities, min_expected: float = 5.0) -> ChiSquareReport:
    """Goodness of fit of observed counts against class probabilities.

    Classes with expected count below ``min_expected`` are merged into the
    smallest-probability neighbour before computing the statistic.
    """
    total = sum(observed)
    if total <= 0:
        raise ValueError("need at least one observation")
    if abs(sum(probabilities) - 1.0) > 1e-9:
        raise ValueError("class probabilities must sum to 1")
    obs = [int(o) for o in observed]
    exp = [p * total for p in probabilities]
    # merge tiny-expectation classes to keep the chi-square approximation honest
    while len(obs) > 2:
        m = min(range(len(exp)), key=lambda i: exp[i])
        if exp[m] >= min_expected:
            break
        if m == 0:
            j = 1
        elif m == len(exp) - 1:
            j = m - 1
        else:
            j = m - 1 if exp[m - 1] <= exp[m + 1] else m + 1
        lo, hi = (j, m) if j < m else (m, j)
        obs[lo] += obs.pop(hi)
        exp[lo] += exp.pop(hi)
    stat = sum((o - e) ** 2 / e for o, e in zip(obs, exp))
    df = len(obs) - 1
    return ChiSquareReport(stat, df, chi2_sf(stat, df), tuple(obs), tuple(exp))


@dataclass(frozen=True)
class MeanReport:
    mean: float
    std: float
    ci_half_width: float
    count: int

    @property
    def ci(self) -> tuple[float, float]:
        return (self.mean - self.ci_half_width, self.mean + self.ci_half_width)


def mean_ci(values) -> MeanReport:
    """Sample mean with a 95% normal-approximation interval."""
    vals = list(values)
    m = len(vals)
    if m < 1:
        raise ValueError("need at least one value")
    mean = sum(vals) / m
    if m == 1:
        return MeanReport(mean, 0.0, 0.0, 1)
    var = sum((v - mean) ** 2 for v in vals) / (m - 1)
    std = math.sqrt(var)
    return MeanReport(mean, std, _Z95 * std / math.sqrt(m), m)


def paired_one_sided_p(diffs) -> float:
    """P-value for 'the mean paired difference is positive' (z-test).

    Degenerate zero-variance samples give 0, 0.5 or 1 by the sign of the
    mean.
    """
    d = list(diffs)
    m = len(d)
    if m < 2:
        raise ValueError("need at least two paired differences")
    mean = sum(d) / m
    var = sum((v - mean) ** 2 for v in d) / (m - 1)
    if var == 0.0:
        return 0.5 if mean == 0.0 else (0.0 if mean > 0 else 1.0)
    z = mean / math.sqrt(var / m)
    return normal_sf(z)
