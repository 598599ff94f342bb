"""
Bootstrapping lemmas over a population, and the fractional lex suite.

The bootstrapping inequalities are evaluated in integers. With e = |dF| - |dL|,
e_i^+ the same quantity for the slice containing i, c_i^- the size of the
slice missing i and r scaled by 2^(n+1):

    single  hypothesis  4 c_i^- <= r
            conclusion  2 c_i^- + e_i^+ <= e
    pair    hypothesis  e > 0, c_i^- <= c_j^-, 12 c_j^- <= m
            conclusion  2 c_j^- + 3 e_j^+ <= 3 e
                     or 2 c_i^- + e_i^+ <= e
                     or (m - c_ij^{++}) + 12 e_ij^{++} <= 12 e
"""

import logging
from fractions import Fraction
from functools import partial
from itertools import permutations, product
from typing import Optional

import numpy as np

from cube.batch import bit_lengths, boundary_sizes, sizes, slice_counts
from cube.dyadic import Dyadic
from cube.exceptions import DimensionError
from cube.family import SetFamily, measure, total_influence
from fraclex.bounds import check_order1_bound
from fraclex.families import FracLexFamily, associate, frac_influence
from fraclex.sweeps import sweep_order1_grid, sweep_order2_grid
from lex.influence import lex_boundary_table, max_lex_influence

from .config import VerifierConfig
from .parallel import map_reduce
from .population import WorkUnit, coverage, population
from .reports import Finding, VerificationReport

logger = logging.getLogger(__name__)

PADDING_MAX = 8
ORDER1_PADDING_LOG_DEN = 3
ORDER2_PADDING_LOG_DEN = 2
CLAIM_LOG_DEN = 20
EQUALITY_CASE = (Dyadic(1, 4), Dyadic(9, 4))


def bootstrap_masks(masks: np.ndarray, n: int):
    """
    Per-family verdicts for both lemmas: (applies, violated) arrays of shape
    (k, n) for the single lemma and (k, n, n) for ordered pairs (i, j).
    """
    k = masks.shape[0]
    m = sizes(masks)
    excess = boundary_sizes(masks, n) - lex_boundary_table(n)[m]
    r = 2 * m - (1 << bit_lengths(m - 1, n + 1))
    in_range = (m > 0) & (2 * m <= (1 << n))

    g1 = lex_boundary_table(n - 1)
    minus = np.empty((k, n), dtype=np.int64)
    plus_excess = np.empty((k, n), dtype=np.int64)
    for i in range(1, n + 1):
        minus[:, i - 1] = slice_counts(masks, n, {i}, ())[0]
        size, boundary = slice_counts(masks, n, {i}, {i})
        plus_excess[:, i - 1] = boundary - g1[size]

    single_ok = 2 * minus + plus_excess <= excess[:, None]
    single_applies = in_range[:, None] & (4 * minus <= r[:, None])

    pair_applies = np.zeros((k, n, n), dtype=bool)
    pair_ok = np.ones((k, n, n), dtype=bool)
    if n >= 2:
        g2 = lex_boundary_table(n - 2)
        base = in_range & (excess > 0)
        for i, j in permutations(range(1, n + 1), 2):
            a, b = i - 1, j - 1
            size, boundary = slice_counts(masks, n, {i, j}, {i, j})
            corner_excess = boundary - g2[size]
            applies = base & (minus[:, a] <= minus[:, b]) & (12 * minus[:, b] <= m)
            ok = (
                (2 * minus[:, b] + 3 * plus_excess[:, b] <= 3 * excess)
                | single_ok[:, a]
                | ((m - size) + 12 * corner_excess <= 12 * excess)
            )
            pair_applies[:, a, b] = applies
            pair_ok[:, a, b] = ok
    return single_applies, single_applies & ~single_ok, pair_applies, pair_applies & ~pair_ok


def bootstrap_unit(unit: WorkUnit, max_findings: int) -> dict:
    n, masks = unit.n, unit.masks
    tally = {"single_cases": 0, "single_violations": 0, "pair_cases": 0, "pair_violations": 0, "findings": []}
    if not len(unit):
        return tally
    single_applies, single_bad, pair_applies, pair_bad = bootstrap_masks(masks, n)
    tally["single_cases"] = int(single_applies.sum())
    tally["single_violations"] = int(single_bad.sum())
    tally["pair_cases"] = int(pair_applies.sum())
    tally["pair_violations"] = int(pair_bad.sum())
    for row, col in zip(*np.nonzero(single_bad)):
        tally["findings"].append(Finding("single_bootstrap_failed", SetFamily(n, int(masks[row])), {"i": int(col) + 1}))
    for row, a, b in zip(*np.nonzero(pair_bad)):
        tally["findings"].append(
            Finding("pair_bootstrap_failed", SetFamily(n, int(masks[row])), {"i": int(a) + 1, "j": int(b) + 1})
        )
    tally["findings"] = tally["findings"][:max_findings]
    return tally


def _merge_tallies(first: dict, second: dict, max_findings: int) -> dict:
    merged = {key: first[key] + second[key] for key in first if key != "findings"}
    merged["findings"] = (first["findings"] + second["findings"])[:max_findings]
    return merged


def verify_bootstrapping(
    n: int = 4, config: Optional[VerifierConfig] = None, jobs: Optional[int] = None
) -> VerificationReport:
    config = config or VerifierConfig.from_settings()
    if n < 1:
        raise DimensionError(f"the bootstrapping lemmas need n >= 1, got {n}")
    units = population(n, config)
    tally = map_reduce(
        partial(bootstrap_unit, max_findings=config.max_findings),
        partial(_merge_tallies, max_findings=config.max_findings),
        units,
        jobs or config.jobs,
    )
    findings = tally.pop("findings")
    passed = tally["single_violations"] == 0 and tally["pair_violations"] == 0
    if not passed:
        logger.warning(f"⚠️ Bootstrapping violations at n={n}: {tally}")
    summary = dict(tally, families=sum(len(unit) for unit in units), **coverage(n, units))
    return VerificationReport("bootstrap", n, passed, summary, findings)


# -- fractional lex suite --------------------------------------------------------


def _grid(log_den: int):
    return [Dyadic(a, log_den) for a in range(1 << log_den)] + [Dyadic(1)]


def check_padding(max_padding: int = PADDING_MAX) -> dict:
    """Measure and influence of associated families agree with the fractional values for every padding."""
    checked, mismatches = 0, []
    families = [FracLexFamily.order1(a, b) for a, b in product(_grid(ORDER1_PADDING_LOG_DEN), repeat=2)]
    families += [FracLexFamily(2, values) for values in product(_grid(ORDER2_PADDING_LOG_DEN), repeat=4)]
    for family in families:
        expected_measure, expected_influence = family.measure, frac_influence(family)
        for padding in range(family.log_den, max_padding + 1):
            built = associate(family, padding)
            checked += 1
            if measure(built) != expected_measure or total_influence(built) != expected_influence:
                mismatches.append({"family": str(family), "m": padding})
    return {"checked": checked, "mismatches": mismatches}


def verify_fraclex(config: Optional[VerifierConfig] = None) -> VerificationReport:
    config = config or VerifierConfig.from_settings()
    padding = check_padding()
    order1 = sweep_order1_grid(config.order1_log_den)
    order2 = sweep_order2_grid(config.order2_log_den, config.order2_c)
    equality = check_order1_bound(*EQUALITY_CASE)
    peak, argmax = max_lex_influence(CLAIM_LOG_DEN)

    checks = {
        "padding_independence": not padding["mismatches"],
        "order1": order1.holds,
        "order2": order2.holds,
        "equality_case": equality.in_regime and equality.slack == 0,
        "lex_influence_at_most_2": peak <= 2,
    }
    findings = [Finding("padding_mismatch", None, mismatch) for mismatch in padding["mismatches"]]
    for report in (order1, order2):
        for name in report.asserted:
            regime = report.regimes.get(name)
            if regime is not None and regime.violations:
                findings.append(Finding("bound_violated", None, {"grid": report.grid, "regime": name, **regime.to_dict()}))
    summary = {
        "checks": checks,
        "padding_checked": padding["checked"],
        "order1": order1,
        "order2": order2,
        "equality_case": equality,
        "lex_influence_max": {"value": peak, "argmax": argmax, "log_den": CLAIM_LOG_DEN},
        "order2_c": Fraction(config.order2_c),
    }
    passed = all(checks.values())
    logger.info(f"✅ Fractional lex suite: {checks}")
    return VerificationReport("fraclex", None, passed, summary, findings[: config.max_findings])
