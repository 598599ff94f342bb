"""
Compressions S_ST.

A member A with S inside A and A disjoint from T is replaced by (A \\ S) | T
unless that set is already present. Over the block S | T this is a slice
operation: the S-slice becomes the intersection of the S- and T-slices and the
T-slice their union. The operator is implemented that way on masks;
shift_elementwise follows the definition member by member and is kept for
differential tests.
"""

import logging
from itertools import combinations
from typing import FrozenSet, Iterable

import numpy as np

from cube.batch import as_masks, check_batch_dimension
from cube.exceptions import PreconditionError
from cube.family import SetFamily, as_subset, format_subset, subcube_positions, subset_index

logger = logging.getLogger(__name__)


def _disjoint_pair(n: int, source: Iterable[int], target: Iterable[int]):
    source, target = as_subset(source, n), as_subset(target, n)
    if source & target:
        logger.warning(
            f"⚠️ Shift refused: S={{{format_subset(source)}}} and T={{{format_subset(target)}}} intersect"
        )
        raise PreconditionError("shift needs disjoint S and T")
    return source, target


def _layout(n: int, source: FrozenSet[int], target: FrozenSet[int]):
    rest = frozenset(range(1, n + 1)) - source - target
    base = subcube_positions(n, rest)
    source_index, target_index = subset_index(source, n), subset_index(target, n)
    return base << source_index, base << target_index, target_index - source_index


def _move(bits, delta: int):
    return bits << delta if delta >= 0 else bits >> -delta


def shift(family: SetFamily, source: Iterable[int], target: Iterable[int]) -> SetFamily:
    n, mask = family.n, family.mask
    source, target = _disjoint_pair(n, source, target)
    at_source_positions, at_target_positions, delta = _layout(n, source, target)
    at_source = mask & at_source_positions
    aligned_target = _move(mask & at_target_positions, -delta)
    untouched = mask & ~(at_source_positions | at_target_positions)
    shifted = untouched | (at_source & aligned_target) | _move(at_source | aligned_target, delta)
    return SetFamily(n, shifted)


def shift_elementwise(family: SetFamily, source: Iterable[int], target: Iterable[int]) -> SetFamily:
    n = family.n
    source, target = _disjoint_pair(n, source, target)
    members = set(family.members())
    result = set()
    for member in members:
        if source <= member and not member & target:
            moved = (member - source) | target
            if moved not in members:
                result.add(moved)
                continue
        result.add(member)
    mask = 0
    for member in result:
        mask |= 1 << subset_index(member, n)
    return SetFamily(n, mask)


def shift_masks(masks, n: int, source: Iterable[int], target: Iterable[int]) -> np.ndarray:
    """The same compression applied to a whole uint64 batch."""
    check_batch_dimension(n)
    source, target = _disjoint_pair(n, source, target)
    at_source_positions, at_target_positions, delta = _layout(n, source, target)
    masks = as_masks(masks)
    source_bits = np.uint64(at_source_positions)
    target_bits = np.uint64(at_target_positions)
    offset = np.uint64(abs(delta))

    def move(bits, forward):
        step_up = (delta >= 0) == forward
        return bits << offset if step_up else bits >> offset

    at_source = masks & source_bits
    aligned_target = move(masks & target_bits, forward=False)
    untouched = masks & ~(source_bits | target_bits)
    return untouched | (at_source & aligned_target) | move(at_source | aligned_target, forward=True)


def is_shift_stable(family: SetFamily, source: Iterable[int], target: Iterable[int]) -> bool:
    return shift(family, source, target) == family


def lower_shifts_stable(family: SetFamily, source: Iterable[int], target: Iterable[int]) -> bool:
    """S_S'T(F) = F for every S' inside S with one element fewer."""
    source = as_subset(source, family.n)
    if not source:
        return True
    return all(
        is_shift_stable(family, frozenset(smaller), target)
        for smaller in combinations(sorted(source), len(source) - 1)
    )


def shift_decreases_influence_hypothesis(family: SetFamily, source: Iterable[int], target: Iterable[int]) -> bool:
    """|S| >= |T| and F is fixed by every S_S'T one step below S."""
    source, target = _disjoint_pair(family.n, source, target)
    return len(source) >= len(target) and lower_shifts_stable(family, source, target)
