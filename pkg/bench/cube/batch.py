"""
Vectorized family operations over uint64 mask arrays (n <= 6).

Every function here has a scalar counterpart in cube.family and is tested
against it.
"""

from functools import lru_cache

import numpy as np

from .exceptions import DimensionError
from .family import coordinate_mask, slice_columns

BATCH_MAX_DIMENSION = 6

_S55 = np.uint64(0x5555555555555555)
_S33 = np.uint64(0x3333333333333333)
_S0F = np.uint64(0x0F0F0F0F0F0F0F0F)
_S01 = np.uint64(0x0101010101010101)
_TOP_BYTE = np.uint64(56)


def check_batch_dimension(n: int) -> int:
    if not 0 <= n <= BATCH_MAX_DIMENSION:
        raise DimensionError(f"vectorized operations need n <= {BATCH_MAX_DIMENSION}, got {n}")
    return n


def bit_count64(arr) -> np.ndarray:
    """SWAR popcount of every uint64 entry."""
    arr = np.asarray(arr, dtype=np.uint64)
    arr = arr - ((arr >> np.uint64(1)) & _S55)
    arr = (arr & _S33) + ((arr >> np.uint64(2)) & _S33)
    arr += arr >> np.uint64(4)
    arr &= _S0F
    arr *= _S01
    arr >>= _TOP_BYTE
    return arr


def as_masks(masks) -> np.ndarray:
    return np.asarray(masks, dtype=np.uint64)


def all_masks(n: int) -> np.ndarray:
    """Every family on P([n]); only sensible for n <= 4."""
    if n > 4:
        raise DimensionError(f"listing all families needs n <= 4, got {n}")
    return np.arange(1 << (1 << n), dtype=np.uint64)


@lru_cache(maxsize=None)
def coordinate_masks(n: int) -> np.ndarray:
    check_batch_dimension(n)
    table = np.array([coordinate_mask(n, i) for i in range(1, n + 1)], dtype=np.uint64)
    table.flags.writeable = False
    return table


def sizes(masks) -> np.ndarray:
    return bit_count64(masks).astype(np.int64)


def bit_lengths(values, limit: int) -> np.ndarray:
    """int.bit_length of every non-negative entry below 2^(limit + 1); negatives give 0."""
    x = np.array(values, dtype=np.int64)
    out = np.zeros(x.shape, dtype=np.int64)
    for _ in range(limit + 1):
        out += x > 0
        x >>= 1
    return out


def coordinate_boundaries(masks, n: int) -> np.ndarray:
    """(k, n) array: boundary edges of each family in each direction."""
    masks = as_masks(masks)
    low = coordinate_masks(n)
    out = np.empty(masks.shape + (n,), dtype=np.int64)
    for k in range(n):
        stride = np.uint64(1 << (n - 1 - k))
        out[..., k] = bit_count64((masks & low[k]) ^ ((masks >> stride) & low[k]))
    return out


def boundary_sizes(masks, n: int) -> np.ndarray:
    return coordinate_boundaries(masks, n).sum(axis=-1)


def increasing_flags(masks, n: int) -> np.ndarray:
    masks = as_masks(masks)
    low = coordinate_masks(n)
    flags = np.ones(masks.shape, dtype=bool)
    for k in range(n):
        stride = np.uint64(1 << (n - 1 - k))
        flags &= ((masks & low[k]) & ~(masks >> stride)) == 0
    return flags


def masks_to_bits(masks, n: int) -> np.ndarray:
    """(k, 2^n) 0/1 matrix, column p holding the membership of position p."""
    check_batch_dimension(n)
    masks = as_masks(masks)
    return ((masks[..., None] >> np.arange(1 << n, dtype=np.uint64)) & np.uint64(1)).astype(np.uint8)


def bits_to_masks(bits) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.uint64)
    return np.bitwise_or.reduce(bits << np.arange(bits.shape[-1], dtype=np.uint64), axis=-1)


def slice_masks(masks, n: int, block, chosen) -> np.ndarray:
    """Masks of the slices F_B^C, re-indexed onto n - |B| coordinates."""
    columns = slice_columns(n, frozenset(block), frozenset(chosen))
    return bits_to_masks(masks_to_bits(masks, n)[..., columns])


def slice_counts(masks, n: int, block, chosen):
    """Sizes and boundary sizes of the slices F_B^C, one pair of arrays per batch."""
    sliced = slice_masks(masks, n, block, chosen)
    rest = n - len(frozenset(block))
    return sizes(sliced), boundary_sizes(sliced, rest)
