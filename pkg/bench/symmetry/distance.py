"""
Distance to the extremal class: min |F ^ G| over G weakly isomorphic to the
lex segment of size |F|. The minimum is taken over the images of L, which are
precomputed once per (n, m).
"""

from functools import lru_cache
from typing import Tuple

import numpy as np

from cube.batch import as_masks, bit_count64
from cube.family import SetFamily
from lex.segments import lex_segment

from .canonical import image_masks
from .group import CubeAutomorphism, check_group_dimension

DISTANCE_BUDGET = 1 << 22


@lru_cache(maxsize=None)
def lex_class_images(n: int, m: int) -> np.ndarray:
    """Sorted distinct masks of every family weakly isomorphic to L(n, m)."""
    check_group_dimension(n)
    images = np.unique(image_masks([lex_segment(n, m).mask], n)[0])
    images.flags.writeable = False
    return images


def dist_to_lex_class(family: SetFamily) -> int:
    images = lex_class_images(family.n, family.size)
    return int(bit_count64(images ^ np.uint64(family.mask)).min())


def dist_to_lex_class_batch(masks, n: int, m: int) -> np.ndarray:
    """Distances for a batch of families that all have m members."""
    images = lex_class_images(n, m)
    masks = as_masks(masks).reshape(-1)
    out = np.empty(masks.shape, dtype=np.int64)
    step = max(1, DISTANCE_BUDGET // images.size)
    for start in range(0, masks.shape[0], step):
        chunk = masks[start : start + step]
        out[start : start + chunk.shape[0]] = bit_count64(chunk[:, None] ^ images[None, :]).min(axis=1)
    return out


def closest_lex_image(family: SetFamily) -> Tuple[int, CubeAutomorphism, SetFamily]:
    """Distance plus an automorphism a with a(L) closest to F, and a(L) itself."""
    n, m = family.n, family.size
    check_group_dimension(n)
    images = image_masks([lex_segment(n, m).mask], n)[0]
    distances = bit_count64(images ^ np.uint64(family.mask))
    best = int(np.argmin(distances))
    return int(distances[best]), CubeAutomorphism.from_element(n, best), SetFamily(n, int(images[best]))
