"""Shared step-outcome record for all player strategies."""

from __future__ import annotations

from typing import NamedTuple


class StepOutcome(NamedTuple):
    """One round's decision: selected square, placed circle, case label.

    ``square_index`` is the 1-based position of the selected square among
    the k offered this round.  ``changed`` flags real progress (an edge that
    the strategy actually uses, as opposed to a pass or a self-hit no-op).
    """

    case: str
    square_index: int
    square: int
    circle: int
    changed: bool
