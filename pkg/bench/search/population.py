"""
Families to verify, cut into work units.

n <= EXHAUSTIVE_MAX_N: every family, in contiguous mask ranges.
n == 5: one representative per weak-isomorphism class for sizes up to
        ORBIT_MAX_SIZE and their complements, each weighted by its orbit size.
n == 6: seeded random families, each with its own density.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, List

import numpy as np

from cube.batch import all_masks, as_masks, bits_to_masks, check_batch_dimension, sizes
from cube.exceptions import DimensionError, PreconditionError
from cube.family import SetFamily
from symmetry.canonical import canonical_masks, orbit_sizes
from symmetry.group import check_group_dimension

from .config import VerifierConfig

logger = logging.getLogger(__name__)

ORBIT_DIMENSION = 5


@dataclass
class WorkUnit:
    n: int
    masks: np.ndarray
    weights: np.ndarray
    label: str

    def __len__(self):
        return int(self.masks.shape[0])


def _split(n: int, masks: np.ndarray, weights: np.ndarray, unit_size: int, label: str) -> List[WorkUnit]:
    return [
        WorkUnit(n, masks[start : start + unit_size], weights[start : start + unit_size], f"{label}[{start}]")
        for start in range(0, max(1, masks.shape[0]), unit_size)
    ]


@lru_cache(maxsize=None)
def _extension_chain(n: int, top: int):
    """Class representatives of sizes 0..top, grown one member at a time."""
    singles = np.uint64(1) << np.arange(1 << n, dtype=np.uint64)
    reps = [np.zeros(1, dtype=np.uint64)]
    for size in range(top):
        grown = reps[-1][:, None] | singles[None, :]
        fresh = grown[grown != reps[-1][:, None]]
        reps.append(np.unique(canonical_masks(fresh, n)))
        logger.debug(f"n={n}: {reps[-1].size} classes of size {size + 1}")
    for level in reps:
        level.flags.writeable = False
    return tuple(reps)


def orbit_representatives(n: int, m: int, cap: int = None) -> np.ndarray:
    """
    Sorted canonical masks, one per class of m-member families. For n = 5 the
    classes are reached by canonical extension, so m (or 2^n - m) must stay
    within cap.
    """
    check_group_dimension(n)
    universe = 1 << n
    if not 0 <= m <= universe:
        raise PreconditionError(f"family size {m} is outside [0, 2^{n}]")
    if n <= 4:
        masks = all_masks(n)
        return np.unique(canonical_masks(masks[sizes(masks) == m], n))
    if n > ORBIT_DIMENSION:
        raise DimensionError(f"orbit enumeration is available for n <= {ORBIT_DIMENSION}, got {n}")
    cap = VerifierConfig.from_settings().orbit_max_size if cap is None else cap
    if m <= cap:
        return _extension_chain(n, cap)[m].copy()
    if universe - m <= cap:
        full = np.uint64((1 << universe) - 1)
        return np.unique(canonical_masks(_extension_chain(n, cap)[universe - m] ^ full, n))
    raise PreconditionError(f"size {m} at n={n} is beyond the orbit cap {cap} (and its complement)")


def enumerate_families(n: int, m: int, cap: int = None) -> Iterator[SetFamily]:
    """One canonical family per weak-isomorphism class of size m, by increasing mask."""
    for mask in orbit_representatives(n, m, cap):
        yield SetFamily(n, int(mask))


def exhaustive_units(n: int, unit_size: int) -> List[WorkUnit]:
    masks = all_masks(n)
    return _split(n, masks, np.ones(masks.shape, dtype=np.int64), unit_size, f"all{n}")


def orbit_units(n: int, cap: int, unit_size: int) -> List[WorkUnit]:
    universe = 1 << n
    levels = sorted(set(range(0, min(cap, universe) + 1)) | set(range(max(0, universe - cap), universe + 1)))
    units = []
    for m in levels:
        reps = orbit_representatives(n, m, cap)
        units.extend(_split(n, reps, orbit_sizes(reps, n), unit_size, f"orbit{n}.{m}"))
    logger.info(f"🔍 n={n}: {sum(len(u) for u in units)} class representatives over {len(levels)} sizes")
    return units


def sampled_masks(n: int, count: int, seed: int) -> np.ndarray:
    check_batch_dimension(n)
    rng = np.random.default_rng(seed)
    density = rng.random(count)
    bits = rng.random((count, 1 << n)) < density[:, None]
    return as_masks(bits_to_masks(bits))


def sampled_units(n: int, count: int, seed: int, unit_size: int) -> List[WorkUnit]:
    masks = sampled_masks(n, count, seed)
    return _split(n, masks, np.ones(masks.shape, dtype=np.int64), unit_size, f"sample{n}")


def population(n: int, config: VerifierConfig) -> List[WorkUnit]:
    if n < 0:
        raise DimensionError(f"dimension must be non-negative, got {n}")
    if n <= config.exhaustive_max_n and n <= 4:
        return exhaustive_units(n, config.unit_size)
    if n == ORBIT_DIMENSION:
        return orbit_units(n, config.orbit_max_size, config.unit_size)
    if n in config.samples:
        check_group_dimension(n)
        return sampled_units(n, config.samples_for(n), config.seed, config.unit_size)
    raise DimensionError(f"no population is configured for n={n}")


def class_totals(units: List[WorkUnit]) -> dict:
    """Sum of orbit weights per family size; equals C(2^n, m) for complete populations."""
    totals = {}
    for unit in units:
        for m, weight in zip(sizes(unit.masks).tolist(), unit.weights.tolist()):
            totals[m] = totals.get(m, 0) + weight
    return dict(sorted(totals.items()))


def covered_sizes(n: int, totals: dict) -> List[int]:
    """Sizes m whose weights add up to every one of the C(2^n, m) families."""
    universe = 1 << n
    return [m for m in range(universe + 1) if totals.get(m, 0) == comb(universe, m)]


def is_complete(n: int, totals: dict) -> bool:
    return len(covered_sizes(n, totals)) == (1 << n) + 1


def coverage(n: int, units: List[WorkUnit]) -> dict:
    """Summary fields saying which family sizes a population covers in full."""
    totals = class_totals(units)
    covered = covered_sizes(n, totals)
    if len(covered) <= (1 << n):
        logger.info(f"🔍 n={n}: population covers {len(covered)} of {(1 << n) + 1} family sizes")
    return {"complete": len(covered) == (1 << n) + 1, "covered_sizes": covered}
