"""
Exhaustive grid sweeps of the fractional lex bounds.

Every grid point is evaluated in integers: influences come from the lex
boundary tables and each inequality is rescaled to a common denominator, so
the sweep is exact and agrees with check_order1_bound / check_order2_bound
point by point.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

import numpy as np

from cube.batch import bit_lengths
from cube.dyadic import Dyadic
from lex.influence import lex_boundary_table

from .bounds import DEFAULT_ORDER2_C, MID_MINUS, ORDER2, SMALL_MINUS

logger = logging.getLogger(__name__)

BASE_CASE = "base_case"
FLAGGED = "mid_minus_j1"


@dataclass
class RegimeSummary:
    points: int = 0
    violations: int = 0
    zero_slack: int = 0
    min_slack: Optional[Fraction] = None
    argmin: Optional[Tuple[Dyadic, ...]] = None

    @property
    def holds(self) -> bool:
        return self.violations == 0

    def absorb(self, slack_scaled: np.ndarray, scale: int, coords: np.ndarray, log_den: int):
        """Fold one chunk of scaled slacks (slack * scale) into the summary."""
        if slack_scaled.size == 0:
            return
        self.points += int(slack_scaled.size)
        self.violations += int((slack_scaled < 0).sum())
        self.zero_slack += int((slack_scaled == 0).sum())
        k = int(np.argmin(slack_scaled))
        value = Fraction(int(slack_scaled[k]), scale)
        if self.min_slack is None or value < self.min_slack:
            self.min_slack = value
            self.argmin = tuple(Dyadic(int(x), log_den) for x in coords[k])

    def to_dict(self) -> dict:
        return {
            "points": self.points,
            "violations": self.violations,
            "zero_slack": self.zero_slack,
            "min_slack": self.min_slack,
            "argmin": list(self.argmin) if self.argmin is not None else None,
        }


@dataclass
class SweepReport:
    grid: str
    log_den: int
    regimes: Dict[str, RegimeSummary] = field(default_factory=dict)
    asserted: Tuple[str, ...] = ()

    @property
    def holds(self) -> bool:
        return all(self.regimes[name].holds for name in self.asserted if name in self.regimes)

    def to_dict(self) -> dict:
        return {
            "grid": self.grid,
            "log_den": self.log_den,
            "holds": self.holds,
            "regimes": {name: summary.to_dict() for name, summary in sorted(self.regimes.items())},
        }


def sweep_order1_grid(log_den: int) -> SweepReport:
    """
    All pairs 0 <= mu- <= mu+ <= 1 with denominator 2^log_den. Points with
    mu in (1/2, 1) decompose with j = 1; they are reported under their own
    heading and not asserted.
    """
    scale_den = 1 << log_den
    g = lex_boundary_table(log_den)
    g_mu = lex_boundary_table(log_den + 1)
    a, b = np.triu_indices(scale_den + 1)
    s = a + b
    keep = (s > 0) & (s < 2 * scale_den)
    a, b, s = a[keep], b[keep], s[keep]

    # everything below is multiplied by 4 * 2^log_den
    lhs = 4 * (g[a] + g[b] + b - a)
    lex = 4 * g_mu[s]
    j = (log_den + 2) - bit_lengths(s - 1, log_den + 2)
    r = 2 * s - np.right_shift(1 << (log_den + 2), j)
    minus = 4 * a

    regime_small = minus <= r
    regime_mid = (3 * r <= minus) & (minus <= s) & ~regime_small
    coords = np.stack([a, b], axis=1)

    report = SweepReport("order1", log_den, asserted=(SMALL_MINUS, MID_MINUS, BASE_CASE))
    scale = 4 * scale_den

    report.regimes[SMALL_MINUS] = RegimeSummary()
    report.regimes[SMALL_MINUS].absorb((lhs - lex - 2 * minus)[regime_small], scale, coords[regime_small], log_den)

    base = regime_small & (j == 2)
    report.regimes[BASE_CASE] = RegimeSummary()
    report.regimes[BASE_CASE].absorb((lhs - lex - 2 * minus)[base], scale, coords[base], log_den)

    mid = regime_mid & (j >= 2)
    report.regimes[MID_MINUS] = RegimeSummary()
    report.regimes[MID_MINUS].absorb((3 * (lhs - lex) - 2 * minus)[mid], 3 * scale, coords[mid], log_den)

    upper = regime_mid & (j == 1)
    report.regimes[FLAGGED] = RegimeSummary()
    report.regimes[FLAGGED].absorb((3 * (lhs - lex) - 2 * minus)[upper], 3 * scale, coords[upper], log_den)

    logger.info(
        f"Order-1 sweep at 2^-{log_den}: "
        + ", ".join(f"{name}={summary.points}" for name, summary in sorted(report.regimes.items()))
    )
    return report


def sweep_order2_grid(log_den: int, c=DEFAULT_ORDER2_C) -> SweepReport:
    """All order-2 families with values on the 2^-log_den grid and measure in (0, 1/2]."""
    c = Fraction(c)
    scale_den = 1 << log_den
    g = lex_boundary_table(log_den)
    g_mu = lex_boundary_table(log_den + 2)
    axis = np.arange(scale_den + 1, dtype=np.int64)
    one, two, both = (x.ravel() for x in np.meshgrid(axis, axis, axis, indexing="ij"))
    partial = g[one] + g[two] + g[both] + np.abs(both - two) + np.abs(both - one)

    report = SweepReport("order2", log_den, asserted=(ORDER2,))
    summary = report.regimes.setdefault(ORDER2, RegimeSummary())
    # slack * 16 * 2^log_den
    scale = 16 * scale_den
    for empty in range(scale_den + 1):
        s = empty + one + two + both
        influence = 4 * (partial + g[empty] + np.abs(one - empty) + np.abs(two - empty))
        live = (s > 0) & (s <= 2 * scale_den)
        j = (log_den + 3) - bit_lengths(s - 1, log_den + 3)
        j = np.where(live, j, 1)
        r = 2 * s - np.right_shift(1 << (log_den + 3), j)
        mu1_minus = 4 * (empty + two)
        mu2_minus = 4 * (empty + one)
        inside = (
            live
            & (r <= mu1_minus)
            & (mu1_minus <= 3 * r)
            & (r <= mu2_minus)
            & (mu2_minus <= 3 * r)
            & (r * c.denominator <= c.numerator * 2 * s)
        )
        if not inside.any():
            continue
        lex = 4 * g_mu[np.where(live, s, 0)]
        slack = 2 * (influence - lex) - r
        coords = np.stack([np.full(one.shape, empty), one, two, both], axis=1)
        summary.absorb(slack[inside], scale, coords[inside], log_den)

    logger.info(f"Order-2 sweep at 2^-{log_den}: {summary.points} points in regime, min slack {summary.min_slack}")
    return report
