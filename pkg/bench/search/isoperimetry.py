"""
Boundary excess against distance to the lex class, over a whole population.

Every work unit folds its families into a table indexed by (size m, exact
excess l) holding the largest distance seen and the first family reaching it.
Tables merge by cell-wise maximum (earlier unit wins ties), so the merged
table does not depend on how the population was cut or scheduled. The
s-table, the best constant and the conjecture findings are all read off it.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import List, Optional

import numpy as np

from cube.batch import boundary_sizes, sizes
from cube.exceptions import DimensionError
from cube.family import SetFamily
from lex.influence import lex_boundary_table
from symmetry.distance import dist_to_lex_class_batch

from .config import VerifierConfig
from .parallel import map_reduce
from .population import ORBIT_DIMENSION, WorkUnit, coverage, population
from .reports import Finding, VerificationReport

logger = logging.getLogger(__name__)

UNKNOWN = "unknown"


def _width(n: int) -> int:
    return n * (1 << n) // 2 + 1


@dataclass
class StabilityScan:
    n: int
    dist: np.ndarray
    witness: np.ndarray
    families: int = 0
    classes: int = 0
    iso_violations: int = 0
    uniqueness_violations: int = 0
    examples: List[Finding] = field(default_factory=list)
    max_findings: int = 100
    coverage: Optional[dict] = None

    @classmethod
    def empty(cls, n: int, max_findings: int) -> "StabilityScan":
        shape = ((1 << n) + 1, _width(n))
        return cls(n, np.full(shape, -1, dtype=np.int64), np.zeros(shape, dtype=np.uint64), max_findings=max_findings)

    def merge(self, other: "StabilityScan") -> "StabilityScan":
        better = other.dist > self.dist
        return StabilityScan(
            self.n,
            np.where(better, other.dist, self.dist),
            np.where(better, other.witness, self.witness),
            self.families + other.families,
            self.classes + other.classes,
            self.iso_violations + other.iso_violations,
            self.uniqueness_violations + other.uniqueness_violations,
            (self.examples + other.examples)[: self.max_findings],
            self.max_findings,
            self.coverage or other.coverage,
        )

    # -- readings ------------------------------------------------------------

    def cells(self):
        """(m, l, dist, family) for every occupied cell, by m then l."""
        for m, l in zip(*np.nonzero(self.dist >= 0)):
            yield int(m), int(l), int(self.dist[m, l]), SetFamily(self.n, int(self.witness[m, l]))

    def summary(self) -> dict:
        return {"families": self.families, "classes": self.classes, **(self.coverage or {})}

    def s_rows(self):
        """
        (n, m, l, s(n, m, l)) with s the running maximum over excess <= l. A
        size the population does not cover in full gets one (n, m, None,
        UNKNOWN) row instead.
        """
        occupied = np.nonzero((self.dist >= 0).any(axis=0))[0]
        if occupied.size == 0:
            return []
        top = int(occupied.max())
        covered = None if self.coverage is None else set(self.coverage["covered_sizes"])
        rows = []
        for m in range(self.dist.shape[0]):
            if covered is not None and m not in covered:
                rows.append((self.n, m, None, UNKNOWN))
                continue
            running = np.maximum.accumulate(self.dist[m, : top + 1])
            rows.extend((self.n, m, l, int(s)) for l, s in enumerate(running) if s >= 0)
        return rows

    def best_constant(self):
        """max dist / l over families with positive excess, with a witness."""
        best, record = Fraction(0), None
        for m, l, dist, family in self.cells():
            if l > 0 and Fraction(dist, l) > best:
                best, record = Fraction(dist, l), {"m": m, "excess": l, "dist": dist, "family": family}
        return best, record

    def counterexamples(self, constant: Fraction) -> List[Finding]:
        constant = Fraction(constant)
        found = []
        for m, l, dist, family in self.cells():
            if dist * constant.denominator > constant.numerator * l:
                found.append(Finding("counterexample", family, {"m": m, "excess": l, "dist": dist}))
        return found[: self.max_findings]


def scan_unit(unit: WorkUnit, max_findings: int) -> StabilityScan:
    n, masks = unit.n, unit.masks
    scan = StabilityScan.empty(n, max_findings)
    scan.families = int(unit.weights.sum())
    scan.classes = len(unit)
    if not len(unit):
        return scan

    m = sizes(masks)
    excess = boundary_sizes(masks, n) - lex_boundary_table(n)[m]
    dist = np.empty(m.shape, dtype=np.int64)
    for size in np.unique(m):
        chosen = m == size
        dist[chosen] = dist_to_lex_class_batch(masks[chosen], n, int(size))

    below = np.flatnonzero(excess < 0)
    tight = np.flatnonzero((excess == 0) & (dist > 0))
    scan.iso_violations, scan.uniqueness_violations = int(below.size), int(tight.size)
    for kind, rows in (("isoperimetric_violation", below), ("uniqueness_violation", tight)):
        for k in rows[:max_findings]:
            family = SetFamily(n, int(masks[k]))
            scan.examples.append(Finding(kind, family, {"m": int(m[k]), "excess": int(excess[k]), "dist": int(dist[k])}))
    scan.examples = scan.examples[:max_findings]

    rows = np.flatnonzero(excess >= 0)
    width = scan.dist.shape[1]
    key = m[rows] * width + excess[rows]
    # per cell: largest dist, then earliest family
    order = np.lexsort((rows, -dist[rows], key))
    first = np.ones(order.size, dtype=bool)
    first[1:] = key[order][1:] != key[order][:-1]
    chosen = rows[order[first]]
    flat = m[chosen] * width + excess[chosen]
    scan.dist.flat[flat] = dist[chosen]
    scan.witness.flat[flat] = masks[chosen]
    return scan


def _population_kind(n: int, config: VerifierConfig) -> str:
    if n <= min(config.exhaustive_max_n, 4):
        return "exhaustive"
    return "orbit" if n == ORBIT_DIMENSION else "sampled"


def scan_population(n: int, config: Optional[VerifierConfig] = None, jobs: Optional[int] = None) -> StabilityScan:
    config = config or VerifierConfig.from_settings()
    units = population(n, config)
    scan = map_reduce(partial(scan_unit, max_findings=config.max_findings), StabilityScan.merge, units, jobs or config.jobs)
    scan.coverage = coverage(n, units)
    logger.info(f"✅ Scanned {scan.families} families ({scan.classes} rows) at n={n}")
    return scan


def verify_iso_and_uniqueness(n: int, config: Optional[VerifierConfig] = None, jobs: Optional[int] = None) -> VerificationReport:
    """I[F] >= I[L_mu(F)] for every family, and equality only on the lex class."""
    config = config or VerifierConfig.from_settings()
    scan = scan_population(n, config, jobs)
    passed = scan.iso_violations == 0 and scan.uniqueness_violations == 0
    if not passed:
        logger.warning(
            f"⚠️ n={n}: {scan.iso_violations} isoperimetric and {scan.uniqueness_violations} uniqueness violations"
        )
    summary = {
        "population": _population_kind(n, config),
        **scan.summary(),
        "isoperimetric_violations": scan.iso_violations,
        "uniqueness_violations": scan.uniqueness_violations,
    }
    return VerificationReport("iso", n, passed, summary, list(scan.examples))


def stability_table(n: int, config: Optional[VerifierConfig] = None, jobs: Optional[int] = None):
    """
    s(n, m, l) rows plus best_constant(n) and its witness. Only the exhaustive
    and orbit populations give true maxima, so n is capped at 5; sizes the
    orbit population leaves out come back as UNKNOWN rows.
    """
    if n > ORBIT_DIMENSION:
        raise DimensionError(f"the s-table needs a complete population (n <= {ORBIT_DIMENSION}), got n={n}")
    scan = scan_population(n, config, jobs)
    constant, witness = scan.best_constant()
    return scan.s_rows(), constant, witness


def best_constant(n: int, config: Optional[VerifierConfig] = None, jobs: Optional[int] = None):
    return stability_table(n, config, jobs)[1]


def verify_conjecture(
    n: int, constant=None, config: Optional[VerifierConfig] = None, jobs: Optional[int] = None
) -> VerificationReport:
    """dist_to_lex_class(F) <= C (|dF| - |dL|); counterexamples are findings."""
    config = config or VerifierConfig.from_settings()
    constant = Fraction(config.conjecture_c if constant is None else constant)
    scan = scan_population(n, config, jobs)
    ratio, witness = scan.best_constant()
    findings = scan.counterexamples(constant)
    if findings:
        logger.warning(f"⚠️ n={n}: {len(findings)} cells beat the constant {constant}")
    summary = {
        "population": _population_kind(n, config),
        **scan.summary(),
        "constant": constant,
        "max_ratio": ratio,
        "max_ratio_witness": witness,
    }
    return VerificationReport("conjecture", n, not findings, summary, findings)
