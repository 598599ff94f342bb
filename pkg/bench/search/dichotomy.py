"""
The stability dichotomy: a family F with 0 < mu <= 1/2 and gap eps <= c1 mu
has an image G under the cube's automorphisms with

    Case (1)  c2 mu_1^-(G) + eps_1^+(G) / 2 <= eps, or
    Case (2)  c2 mu(G \\ S_12) + eps_12^{++}(G) / 4 <= eps.

Running over the orbit of F is the same as running over the coordinates of F
and which side of each plays "+", so the largest admissible c2 for F is a
maximum of at most 2n + 4 C(n, 2) exact ratios, all computed in integers.
For each c1 on the grid the sweep reports the smallest such maximum over the
population: the supremum of the c2 for which the dichotomy held.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from itertools import combinations
from typing import List, Optional, Tuple

import numpy as np

from cube.batch import boundary_sizes, sizes, slice_counts
from cube.exceptions import DimensionError
from cube.family import SetFamily, measure, subcube
from cube.stats import slice_stats, slice_stats2
from lex.influence import lex_boundary_table
from lex.segments import stability_gap

from .config import VerifierConfig
from .parallel import map_reduce
from .population import WorkUnit, coverage, population
from .reports import Finding, VerificationReport

logger = logging.getLogger(__name__)

INFEASIBLE = -1


def prop41_cases(family: SetFamily, c2, image: Optional[SetFamily] = None) -> dict:
    """Both cases for one image G of F (G = F by default), at coordinates 1 and {1, 2}."""
    image = family if image is None else image
    c2 = Fraction(c2)
    eps = stability_gap(family).to_fraction()
    first, pair = slice_stats(image, 1), slice_stats2(image, 1, 2)
    corner = (image.mask & subcube(image.n, {1, 2}, {1, 2}).mask).bit_count()
    outside = measure(image).to_fraction() - Fraction(corner, 1 << image.n)
    case1 = c2 * first.mu_minus.to_fraction() + first.eps_plus.to_fraction() / 2
    case2 = c2 * outside + pair.eps_pp.to_fraction() / 4
    return {"eps": eps, "case1": case1 <= eps, "case2": case2 <= eps, "case1_lhs": case1, "case2_lhs": case2}


def _ratio_options(masks: np.ndarray, n: int, excess: np.ndarray, m: np.ndarray):
    """Yield (num, den) arrays, one per coordinate/orientation choice."""
    g1 = lex_boundary_table(n - 1)
    for i in range(1, n + 1):
        out_size, out_boundary = slice_counts(masks, n, {i}, ())
        in_size, in_boundary = slice_counts(masks, n, {i}, {i})
        yield excess - (in_boundary - g1[in_size]), out_size
        yield excess - (out_boundary - g1[out_size]), in_size
    if n < 2:
        return
    g2 = lex_boundary_table(n - 2)
    for i, j in combinations(range(1, n + 1), 2):
        for chosen in ((), (j,), (i,), (i, j)):
            size, boundary = slice_counts(masks, n, {i, j}, chosen)
            yield 2 * (excess - (boundary - g2[size])), m - size


def c2_bounds(masks: np.ndarray, n: int):
    """
    Per family: the largest c2 for which some image satisfies a case, as an
    exact (num, den) pair. den == 0 means unconstrained, num < 0 infeasible.
    """
    m = sizes(masks)
    excess = boundary_sizes(masks, n) - lex_boundary_table(n)[m]
    num = np.full(m.shape, INFEASIBLE, dtype=np.int64)
    den = np.ones(m.shape, dtype=np.int64)
    for option_num, option_den in _ratio_options(masks, n, excess, m):
        option_num, option_den = _normalized(option_num, option_den)
        better = _less(num, den, option_num, option_den)
        num = np.where(better, option_num, num)
        den = np.where(better, option_den, den)
    return num, den, m, excess


def _normalized(num: np.ndarray, den: np.ndarray):
    infeasible = num < 0
    unconstrained = ~infeasible & (den == 0)
    num = np.where(infeasible, INFEASIBLE, np.where(unconstrained, 1, num))
    den = np.where(infeasible, 1, den)
    return num, den


def _less(a_num, a_den, b_num, b_den):
    """a < b for normalized ratios, by cross-multiplication (den >= 0)."""
    return a_num * b_den < b_num * a_den


def exact_argmin(num: np.ndarray, den: np.ndarray) -> int:
    """Index of the smallest normalized ratio; the first one on ties."""
    index = np.arange(num.size)
    while index.size > 1:
        left, right = index[0 : index.size - 1 : 2], index[1::2]
        winners = np.where(_less(num[right], den[right], num[left], den[left]), right, left)
        index = np.concatenate([winners, index[-1:]]) if index.size % 2 else winners
    return int(index[0])


@dataclass
class GridCell:
    eligible: int = 0
    num: int = 1
    den: int = 0
    mask: Optional[int] = None

    def merge(self, other: "GridCell") -> "GridCell":
        keep = other if _less(other.num, other.den, self.num, self.den) else self
        return GridCell(self.eligible + other.eligible, keep.num, keep.den, keep.mask)

    @property
    def c2(self):
        """Exact supremum of c2; None when nothing was eligible, "inf" when unconstrained."""
        if self.eligible == 0:
            return None
        if self.den == 0:
            return "inf"
        if self.num < 0:
            return Fraction(0)
        return Fraction(self.num, self.den)


@dataclass
class DichotomySweep:
    n: int
    grid: Tuple[Fraction, ...]
    cells: List[GridCell]

    def merge(self, other: "DichotomySweep") -> "DichotomySweep":
        return DichotomySweep(self.n, self.grid, [a.merge(b) for a, b in zip(self.cells, other.cells)])


def sweep_unit(unit: WorkUnit, grid: Tuple[Fraction, ...]) -> DichotomySweep:
    n, masks = unit.n, unit.masks
    cells = [GridCell() for _ in grid]
    if not len(unit):
        return DichotomySweep(n, grid, cells)
    num, den, m, excess = c2_bounds(masks, n)
    in_range = (m > 0) & (2 * m <= (1 << n))
    for cell, c1 in zip(cells, grid):
        eligible = np.flatnonzero(in_range & (2 * excess * c1.denominator <= c1.numerator * m))
        cell.eligible = int(eligible.size)
        if eligible.size:
            k = eligible[exact_argmin(num[eligible], den[eligible])]
            cell.num, cell.den, cell.mask = int(num[k]), int(den[k]), int(masks[k])
    return DichotomySweep(n, grid, cells)


def verify_prop41_dichotomy(
    n: int, config: Optional[VerifierConfig] = None, jobs: Optional[int] = None
) -> VerificationReport:
    config = config or VerifierConfig.from_settings()
    if n < 2:
        raise DimensionError(f"the dichotomy involves coordinates 1 and 2, so n >= 2, got {n}")
    grid = tuple(config.c1_grid)
    units = population(n, config)
    sweep = map_reduce(partial(sweep_unit, grid=grid), DichotomySweep.merge, units, jobs or config.jobs)

    rows, findings = [], []
    for c1, cell in zip(grid, sweep.cells):
        c2 = cell.c2
        rows.append({"c1": c1, "eligible": cell.eligible, "c2": c2})
        if cell.mask is not None and c2 != "inf":
            findings.append(Finding("binding_family", SetFamily(n, cell.mask), {"c1": c1, "c2": c2}))
    positive = [row for row in rows if row["c2"] == "inf" or (row["c2"] is not None and row["c2"] > 0)]
    if not positive:
        logger.warning(f"⚠️ n={n}: no c1 on the grid admits a positive c2")
    summary = {
        "grid": rows,
        "largest_c1": max((row["c1"] for row in positive), default=None),
        **coverage(n, units),
    }
    return VerificationReport("prop41", n, bool(positive), summary, findings[: config.max_findings])
