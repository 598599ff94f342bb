"""
The automorphism group of Q_n: pairs (pi, D) acting by F -> X_D(pi(F)).

Elements are numbered g = perm_index * 2^n + index(D), with permutations in
itertools.permutations order, so element 0 is the identity.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Dict, FrozenSet, Iterable, Tuple

import numpy as np

from cube.exceptions import DimensionError, FamilyFormatError, PreconditionError
from cube.family import SetFamily, as_subset, check_dimension, subset_index

logger = logging.getLogger(__name__)

GROUP_MAX_DIMENSION = 6


@dataclass(frozen=True)
class CubeAutomorphism:
    """pi[i - 1] is the image of coordinate i; flips is the set D."""

    pi: Tuple[int, ...]
    flips: FrozenSet[int] = frozenset()

    def __post_init__(self):
        pi = tuple(self.pi)
        if sorted(pi) != list(range(1, len(pi) + 1)):
            raise PreconditionError(f"{list(pi)} is not a permutation of [{len(pi)}]")
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "flips", as_subset(self.flips, len(pi)))

    @classmethod
    def identity(cls, n: int) -> "CubeAutomorphism":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.pi)

    def __call__(self, subset: Iterable[int]) -> FrozenSet[int]:
        return frozenset(self.pi[i - 1] for i in subset) ^ self.flips

    def map_position(self, position: int) -> int:
        n, image = self.n, 0
        for i in range(1, n + 1):
            if position >> (n - i) & 1:
                image |= 1 << (n - self.pi[i - 1])
        return image ^ subset_index(self.flips, n)

    def compose(self, other: "CubeAutomorphism") -> "CubeAutomorphism":
        """self after other."""
        if other.n != self.n:
            raise DimensionError(f"cannot compose automorphisms of Q_{self.n} and Q_{other.n}")
        pi = tuple(self.pi[other.pi[i] - 1] for i in range(self.n))
        flips = self.flips ^ frozenset(self.pi[d - 1] for d in other.flips)
        return CubeAutomorphism(pi, flips)

    __mul__ = compose

    def inverse(self) -> "CubeAutomorphism":
        inverse_pi = [0] * self.n
        for i, image in enumerate(self.pi, start=1):
            inverse_pi[image - 1] = i
        return CubeAutomorphism(tuple(inverse_pi), frozenset(inverse_pi[d - 1] for d in self.flips))

    def apply(self, family: SetFamily) -> SetFamily:
        return apply_automorphism(self, family)

    @property
    def element_index(self) -> int:
        tables = group_tables(self.n)
        perm = tuple(image - 1 for image in self.pi)
        return tables.perm_index[perm] * (1 << self.n) + subset_index(self.flips, self.n)

    @classmethod
    def from_element(cls, n: int, element: int) -> "CubeAutomorphism":
        tables = group_tables(n)
        perm, flip_index = divmod(int(element), 1 << n)
        pi = tuple(p + 1 for p in tables.perms[perm])
        return cls(pi, frozenset(i for i in range(1, n + 1) if flip_index >> (n - i) & 1))

    def to_dict(self) -> dict:
        return {"pi": list(self.pi), "D": "".join("1" if i in self.flips else "0" for i in range(1, self.n + 1))}

    @classmethod
    def from_dict(cls, data: dict) -> "CubeAutomorphism":
        try:
            pi, bits = data["pi"], data["D"]
        except (KeyError, TypeError) as e:
            raise FamilyFormatError('automorphism literal needs "pi" and "D"') from e
        if len(bits) != len(pi) or set(bits) - {"0", "1"}:
            raise FamilyFormatError(f"flip string {bits!r} does not match pi of length {len(pi)}")
        return cls(tuple(pi), frozenset(i + 1 for i, b in enumerate(bits) if b == "1"))

    def __str__(self):
        flips = "".join(str(d) for d in sorted(self.flips)) or "∅"
        return f"(pi={list(self.pi)}, D={flips})"


def apply_automorphism(automorphism: CubeAutomorphism, family: SetFamily) -> SetFamily:
    if automorphism.n != family.n:
        raise DimensionError(f"automorphism of Q_{automorphism.n} applied to a family on Q_{family.n}")
    mask = 0
    for position in family.positions():
        mask |= 1 << automorphism.map_position(position)
    return SetFamily(family.n, mask)


@dataclass(frozen=True)
class GroupTables:
    """
    positions[g, v] is the image of vertex v under element g; weights is the
    transposed table of 2^positions used to map whole masks with one matmul.
    """

    n: int
    perms: Tuple[Tuple[int, ...], ...]
    perm_index: Dict[Tuple[int, ...], int]
    positions: np.ndarray
    weights: np.ndarray

    @property
    def order(self) -> int:
        return self.positions.shape[0]


def check_group_dimension(n: int) -> int:
    check_dimension(n)
    if n > GROUP_MAX_DIMENSION:
        raise DimensionError(f"exact symmetry reduction is limited to n <= {GROUP_MAX_DIMENSION}, got {n}")
    return n


@lru_cache(maxsize=None)
def group_tables(n: int) -> GroupTables:
    check_group_dimension(n)
    universe = 1 << n
    perms = tuple(permutations(range(n)))
    vertices = np.arange(universe)
    vertex_bits = (vertices[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1
    targets = np.array([[1 << (n - 1 - p[i]) for i in range(n)] for p in perms], dtype=np.int64).reshape(len(perms), n)
    permuted = (vertex_bits @ targets.T).T
    positions = (permuted[:, None, :] ^ vertices[None, :, None]).reshape(len(perms) * universe, universe)
    weights = np.ascontiguousarray((np.uint64(1) << positions.astype(np.uint64)).T)
    positions.flags.writeable = False
    weights.flags.writeable = False
    logger.debug(f"Built automorphism tables for Q_{n}: {positions.shape[0]} elements")
    return GroupTables(n, perms, {p: k for k, p in enumerate(perms)}, positions, weights)


def group_elements(n: int):
    """Every automorphism of Q_n, in element order."""
    order = group_tables(n).order
    return (CubeAutomorphism.from_element(n, g) for g in range(order))
