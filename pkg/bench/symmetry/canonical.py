import logging
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from cube.batch import as_masks, masks_to_bits
from cube.exceptions import PreconditionError
from cube.family import SetFamily, coordinate_boundary, require_same_dimension

from .group import CubeAutomorphism, check_group_dimension, group_tables

logger = logging.getLogger(__name__)

# rows of (k, |G|) image tables materialized at once
IMAGE_BUDGET = 1 << 22


def _chunks(masks: np.ndarray, order: int):
    step = max(1, IMAGE_BUDGET // order)
    for start in range(0, masks.shape[0], step):
        yield masks[start : start + step]


def image_masks(masks, n: int) -> np.ndarray:
    """(k, |G|) table of the images of each mask under every group element."""
    tables = group_tables(n)
    masks = as_masks(masks).reshape(-1)
    return masks_to_bits(masks, n).astype(np.uint64) @ tables.weights


def canonical_masks(masks, n: int) -> np.ndarray:
    """Smallest image mask of every family in the batch."""
    tables = group_tables(n)
    masks = as_masks(masks).reshape(-1)
    out = np.empty(masks.shape, dtype=np.uint64)
    done = 0
    for chunk in _chunks(masks, tables.order):
        out[done : done + chunk.shape[0]] = image_masks(chunk, n).min(axis=1)
        done += chunk.shape[0]
    return out


def canonical_form(family: SetFamily) -> SetFamily:
    check_group_dimension(family.n)
    return SetFamily(family.n, int(canonical_masks([family.mask], family.n)[0]))


def orbit(family: SetFamily) -> List[SetFamily]:
    """Every family weakly isomorphic to F, in increasing mask order."""
    check_group_dimension(family.n)
    images = np.unique(image_masks([family.mask], family.n)[0])
    return [SetFamily(family.n, int(m)) for m in images]


def orbit_sizes(masks, n: int) -> np.ndarray:
    tables = group_tables(n)
    masks = as_masks(masks).reshape(-1)
    out = np.empty(masks.shape, dtype=np.int64)
    done = 0
    for chunk in _chunks(masks, tables.order):
        images = np.sort(image_masks(chunk, n), axis=1)
        out[done : done + chunk.shape[0]] = 1 + (np.diff(images, axis=1) != 0).sum(axis=1)
        done += chunk.shape[0]
    return out


def _direction_profile(family: SetFamily):
    return sorted(coordinate_boundary(family, i) for i in range(1, family.n + 1))


def are_weakly_isomorphic(first: SetFamily, second: SetFamily) -> Tuple[bool, Optional[CubeAutomorphism]]:
    """Decide G = a(F) for some automorphism a, returning a witness when it exists."""
    require_same_dimension(first, second)
    if first.size != second.size or _direction_profile(first) != _direction_profile(second):
        return False, None
    check_group_dimension(first.n)
    hits = np.flatnonzero(image_masks([first.mask], first.n)[0] == np.uint64(second.mask))
    if hits.size == 0:
        return False, None
    return True, CubeAutomorphism.from_element(first.n, int(hits[0]))


@lru_cache(maxsize=None)
def _cycle_types(n: int) -> Counter:
    tables = group_tables(n)
    types = Counter()
    for row in tables.positions:
        seen = [False] * len(row)
        lengths = []
        for start in range(len(row)):
            if seen[start]:
                continue
            length, v = 0, start
            while not seen[v]:
                seen[v] = True
                v = row[v]
                length += 1
            lengths.append(length)
        types[tuple(sorted(lengths))] += 1
    return types


def burnside_count(n: int, m: int) -> int:
    """Number of weak-isomorphism classes of m-element families on P([n])."""
    check_group_dimension(n)
    if not 0 <= m <= (1 << n):
        raise PreconditionError(f"family size {m} is outside [0, 2^{n}]")
    total = 0
    for lengths, count in _cycle_types(n).items():
        # fixed m-sets are unions of whole cycles: coefficient of x^m in prod (1 + x^len)
        poly = [1] + [0] * m
        for length in lengths:
            for k in range(m, length - 1, -1):
                poly[k] += poly[k - length]
        total += count * poly[m]
    classes = Fraction(total, group_tables(n).order)
    assert classes.denominator == 1
    return int(classes)
