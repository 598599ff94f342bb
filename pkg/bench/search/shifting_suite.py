"""
Exhaustive checks of the slice identity and of the shifting lemmas.
"""

import logging
from itertools import combinations, product
from typing import Iterator, List, Optional, Tuple

import numpy as np

from cube.batch import all_masks, boundary_sizes, coordinate_boundaries, increasing_flags, sizes
from cube.exceptions import DimensionError
from cube.family import (
    SetFamily,
    decompose_influence,
    dictatorship,
    edge_boundary_size,
    format_subset,
    is_increasing,
    pivotal_family,
    slice_family,
    subset_from_index,
    total_influence,
)
from shifting.operators import shift_masks
from shifting.pipelines import cascade_to_dictatorship, is_n_stable, n_stabilize, pivotal_exchange

from .config import VerifierConfig
from .population import sampled_masks
from .reports import Finding, VerificationReport

logger = logging.getLogger(__name__)

EXHAUSTIVE_SLICE_MAX_N = 3
SAMPLED_PAIRS = 10000


def _families(n: int) -> np.ndarray:
    if n > 4:
        raise DimensionError(f"exhaustive shifting checks need n <= 4, got {n}")
    return all_masks(n)


def disjoint_pairs(n: int, max_block: Optional[int] = None) -> Iterator[Tuple[frozenset, frozenset]]:
    """Every (S, T) with S & T empty and |S | T| <= max_block, in a fixed order."""
    max_block = n if max_block is None else max_block
    for roles in product(range(3), repeat=n):
        source = frozenset(i + 1 for i, role in enumerate(roles) if role == 1)
        target = frozenset(i + 1 for i, role in enumerate(roles) if role == 2)
        if len(source | target) <= max_block:
            yield source, target


def _label(subset) -> str:
    return "{" + format_subset(subset) + "}"


# -- influence decomposition ---------------------------------------------------


def verify_slice_identity(n: int, config: Optional[VerifierConfig] = None) -> VerificationReport:
    """I[F] = E_B I[F_S^B] + sum_{i in S} Inf_i[F]: every (F, S) up to n = 3, random pairs beyond."""
    config = config or VerifierConfig.from_settings()
    if n <= EXHAUSTIVE_SLICE_MAX_N:
        masks = _families(n).tolist()
        pairs = ((mask, index) for mask in masks for index in range(1 << n))
        population = "exhaustive"
    else:
        count = SAMPLED_PAIRS
        masks = sampled_masks(n, count, config.seed).tolist()
        subsets = np.random.default_rng(config.seed + 1).integers(0, 1 << n, size=count).tolist()
        pairs = zip(masks, subsets)
        population = "sampled"

    checked, findings = 0, []
    for mask, index in pairs:
        family, subset = SetFamily(n, mask), subset_from_index(index, n)
        expectation, influence_sum = decompose_influence(family, subset)
        checked += 1
        if expectation + influence_sum != total_influence(family):
            findings.append(
                Finding(
                    "decomposition_mismatch",
                    family,
                    {"S": _label(subset), "expectation": expectation, "influence_sum": influence_sum},
                )
            )
    logger.info(f"✅ Slice identity checked on {checked} (F, S) pairs at n={n}")
    summary = {"population": population, "pairs": checked, "mismatches": len(findings)}
    return VerificationReport("slices", n, not findings, summary, findings[: config.max_findings])


# -- shifting -------------------------------------------------------------------


def _lower_shifts_stable_masks(masks: np.ndarray, n: int, source, target) -> np.ndarray:
    stable = np.ones(masks.shape, dtype=bool)
    if not source:
        return stable
    for smaller in combinations(sorted(source), len(source) - 1):
        stable &= shift_masks(masks, n, smaller, target) == masks
    return stable


def find_unstable_shift_witness(n: int = 3, max_block: int = 3) -> Optional[dict]:
    """First (S, T, F) where S_ST raises the boundary; such triples always miss the stability hypothesis."""
    masks = _families(n)
    before = boundary_sizes(masks, n)
    for source, target in disjoint_pairs(n, max_block):
        after = boundary_sizes(shift_masks(masks, n, source, target), n)
        hits = np.flatnonzero(after > before)
        if hits.size:
            k = int(hits[0])
            hypothesis = len(source) >= len(target) and bool(
                _lower_shifts_stable_masks(masks[k : k + 1], n, source, target)[0]
            )
            return {
                "family": SetFamily(n, int(masks[k])),
                "S": _label(source),
                "T": _label(target),
                "boundary_before": int(before[k]),
                "boundary_after": int(after[k]),
                "hypothesis": hypothesis,
            }
    return None


def find_pivotal_exchange_instances(n: int, limit: Optional[int] = None) -> List[dict]:
    """
    Exchanges on increasing n-stable families with two or more n-pivotal sets.
    With |A| >= |B| the first exchange must lower |dF| by at least 2, and both
    exchanges must shrink the n-pivotal family by exactly 2.
    """
    masks = _families(n)
    instances = []
    for mask in masks[increasing_flags(masks, n)].tolist():
        family = SetFamily(n, mask)
        if not is_n_stable(family):
            continue
        pivotal = sorted(pivotal_family(family, n).members(), key=lambda s: (-len(s), sorted(s)))
        for first, second in combinations(pivotal, 2):
            exchanged = pivotal_exchange(family, first, second)
            boundary = edge_boundary_size(family)
            after = [edge_boundary_size(f) for f in exchanged]
            pivots = [pivotal_family(f, n).size for f in exchanged]
            instances.append(
                {
                    "family": family,
                    "A": _label(first),
                    "B": _label(second),
                    "boundary": boundary,
                    "boundary_after": after,
                    "pivotal": len(pivotal),
                    "pivotal_after": pivots,
                    "holds": after[0] <= boundary - 2 and all(p == len(pivotal) - 2 for p in pivots),
                }
            )
            if limit is not None and len(instances) >= limit:
                return instances
    return instances


def verify_shifting(n: int = 3, config: Optional[VerifierConfig] = None) -> VerificationReport:
    config = config or VerifierConfig.from_settings()
    if n < 1:
        raise DimensionError(f"the shifting suite needs n >= 1, got {n}")
    masks = _families(n)
    m = sizes(masks)
    before = boundary_sizes(masks, n)
    directions = coordinate_boundaries(masks, n)
    counts = {
        "pairs": 0,
        "measure_violations": 0,
        "hypothesis_cases": 0,
        "hypothesis_violations": 0,
        "unhypothesized_increases": 0,
        "monotonization_violations": 0,
        "exchange_shift_violations": 0,
        "stabilization_violations": 0,
        "pivotal_exchange_instances": 0,
        "pivotal_exchange_violations": 0,
    }
    findings = []

    def record(kind, k, **data):
        if len(findings) < config.max_findings:
            findings.append(Finding(kind, SetFamily(n, int(masks[k])), data))

    for source, target in disjoint_pairs(n):
        counts["pairs"] += 1
        shifted = shift_masks(masks, n, source, target)
        after = boundary_sizes(shifted, n)
        labels = {"S": _label(source), "T": _label(target)}
        for k in np.flatnonzero(sizes(shifted) != m)[:1]:
            record("measure_changed", k, **labels)
        counts["measure_violations"] += int((sizes(shifted) != m).sum())

        hypothesis = _lower_shifts_stable_masks(masks, n, source, target) & (len(source) >= len(target))
        raised = after > before
        counts["hypothesis_cases"] += int(hypothesis.sum())
        counts["hypothesis_violations"] += int((hypothesis & raised).sum())
        counts["unhypothesized_increases"] += int((~hypothesis & raised).sum())
        for k in np.flatnonzero(hypothesis & raised)[:1]:
            record("shift_raised_boundary", k, **labels)

        if not source and len(target) == 1:
            # monotonization: no direction gains boundary
            worse = (coordinate_boundaries(shifted, n) > directions).any(axis=1)
            counts["monotonization_violations"] += int(worse.sum())
            for k in np.flatnonzero(worse)[:1]:
                record("monotonization_raised_influence", k, **labels)
        if len(source) == 1 and len(target) == 1:
            counts["exchange_shift_violations"] += int(raised.sum())
            for k in np.flatnonzero(raised)[:1]:
                record("exchange_shift_raised_boundary", k, **labels)

    # n-stabilization of increasing families
    for k in np.flatnonzero(increasing_flags(masks, n)):
        family = SetFamily(n, int(masks[k]))
        stabilized = n_stabilize(family)
        moved = (family.mask & ~stabilized.mask).bit_count()
        ok = (
            is_n_stable(stabilized)
            and edge_boundary_size(stabilized) <= int(before[k])
            and (family.mask ^ stabilized.mask).bit_count() == 2 * moved
            and moved <= pivotal_family(family, n).size
        )
        if not ok:
            counts["stabilization_violations"] += 1
            record("stabilization_failed", int(k))

    for instance in find_pivotal_exchange_instances(n):
        counts["pivotal_exchange_instances"] += 1
        if not instance["holds"]:
            counts["pivotal_exchange_violations"] += 1
            if len(findings) < config.max_findings:
                findings.append(Finding("pivotal_exchange_failed", instance["family"], {k: v for k, v in instance.items() if k != "family"}))

    witness = find_unstable_shift_witness(n, max_block=n)
    passed = all(counts[key] == 0 for key in counts if key.endswith("_violations"))
    summary = dict(counts, unstable_shift_witness=witness)
    logger.info(f"✅ Shifting suite at n={n}: {counts['pairs']} (S, T) pairs, passed={passed}")
    return VerificationReport("shifting", n, passed, summary, findings)


# -- cascade --------------------------------------------------------------------


def _minus_sizes(family: SetFamily) -> List[int]:
    return [slice_family(family, {i}, ()).size for i in range(1, family.n + 1)]


def verify_cascade(n: int = 4, config: Optional[VerifierConfig] = None) -> VerificationReport:
    """
    For every increasing F with mu <= 1/2 the final stage lies in D_1, no stage
    raises I, every stage stays increasing and mu_i^- never drops for i > 1.
    """
    config = config or VerifierConfig.from_settings()
    if n < 2:
        raise DimensionError(f"the cascade needs n >= 2, got {n}")
    masks = _families(n)
    chosen = masks[increasing_flags(masks, n) & (2 * sizes(masks) <= (1 << n))]
    outside_d1 = ~dictatorship(n, 1).mask
    checked, findings = 0, []
    for mask in chosen.tolist():
        family = SetFamily(n, mask)
        stages = cascade_to_dictatorship(family)
        final = stages[-1]
        influences = [total_influence(family)] + [total_influence(stage) for stage in stages]
        start, end = _minus_sizes(family), _minus_sizes(final)
        problems = []
        if final.mask & outside_d1:
            problems.append("final stage leaves D_1")
        if any(later > earlier for earlier, later in zip(influences, influences[1:])):
            problems.append("a stage raised the total influence")
        if not all(is_increasing(stage) for stage in stages):
            problems.append("a stage is not increasing")
        if any(end[i] < start[i] for i in range(1, n)):
            problems.append("mu_i^- dropped")
        if any(stage.size != family.size for stage in stages):
            problems.append("measure changed")
        checked += 1
        if problems:
            findings.append(Finding("cascade_failed", family, {"problems": problems}))
    logger.info(f"✅ Cascade checked on {checked} increasing families at n={n}")
    summary = {"families": checked, "violations": len(findings), "stages": n - 1}
    return VerificationReport("cascade", n, not findings, summary, findings[: config.max_findings])
