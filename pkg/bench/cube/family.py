"""
Set families on P([n]) stored as membership bitmaps.

Subset S sits at position index(S) = sum of 2^(n-i) over i in S, so coordinate 1
is the most significant bit and descending index order is the lexicographic
order S > T iff min(S ^ T) lies in S.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, List

from .dyadic import Dyadic
from .exceptions import DimensionError, FamilyFormatError, PreconditionError

MAX_DIMENSION = 12


# -- subsets and indices -----------------------------------------------------


def check_dimension(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or not 0 <= n <= MAX_DIMENSION:
        raise DimensionError(f"dimension must be an integer in [0, {MAX_DIMENSION}], got {n!r}")
    return n


def check_coordinate(n: int, i: int) -> int:
    if not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= n:
        raise PreconditionError(f"coordinate {i!r} is outside [1, {n}]")
    return i


def as_subset(elements: Iterable[int], n: int) -> FrozenSet[int]:
    """Validate an iterable of coordinates as a subset of [n]."""
    subset = frozenset(elements)
    for i in subset:
        if not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= n:
            raise FamilyFormatError(f"element {i!r} is outside [1, {n}]")
    return subset


def subset_index(subset: Iterable[int], n: int) -> int:
    return sum(1 << (n - i) for i in as_subset(subset, n))


def subset_from_index(index: int, n: int) -> FrozenSet[int]:
    if not 0 <= index < (1 << n):
        raise PreconditionError(f"index {index} is outside [0, 2^{n})")
    return frozenset(i for i in range(1, n + 1) if index >> (n - i) & 1)


def format_subset(subset: Iterable[int]) -> str:
    """Compact label used in logs and reprs: {1,2} -> "12", {} -> "∅"."""
    items = sorted(subset)
    if not items:
        return "∅"
    sep = "," if items[-1] > 9 else ""
    return sep.join(str(i) for i in items)


@lru_cache(maxsize=None)
def coordinate_mask(n: int, i: int) -> int:
    """Positions whose subset does not contain i."""
    stride = 1 << (n - i)
    block = (1 << stride) - 1
    mask = 0
    for start in range(0, 1 << n, 2 * stride):
        mask |= block << start
    return mask


@lru_cache(maxsize=None)
def subcube_positions(n: int, coordinates: FrozenSet[int]) -> int:
    """Positions of all subsets of the given coordinates."""
    positions = 1
    for c in coordinates:
        positions |= positions << (1 << (n - c))
    return positions


def slice_columns(n: int, block: FrozenSet[int], chosen: FrozenSet[int]) -> List[int]:
    """
    Map the positions of the slice over `block` fixed to `chosen` back to
    positions of P([n]). Entry t is the parent position of slice subset t.
    """
    rest = [c for c in range(1, n + 1) if c not in block]
    columns = [sum(1 << (n - c) for c in chosen)]
    for c in reversed(rest):
        weight = 1 << (n - c)
        columns = columns + [col + weight for col in columns]
    return columns


# -- the family type ---------------------------------------------------------


@dataclass(frozen=True)
class SetFamily:
    """
    A family of subsets of [n]. Dimension 0 is allowed so that slices over
    the whole ground set stay well-formed.
    """

    n: int
    mask: int = 0

    def __post_init__(self):
        check_dimension(self.n)
        if not isinstance(self.mask, int) or not 0 <= self.mask < (1 << (1 << self.n)):
            raise FamilyFormatError(f"mask does not fit the 2^{self.n} positions of P([{self.n}])")

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def universe(self) -> int:
        return 1 << self.n

    def __len__(self):
        return self.size

    def __contains__(self, subset) -> bool:
        return bool(self.mask >> subset_index(subset, self.n) & 1)

    def positions(self) -> List[int]:
        """Member positions in descending (lexicographic) order."""
        mask, found = self.mask, []
        while mask:
            top = mask.bit_length() - 1
            found.append(top)
            mask ^= 1 << top
        return found

    def members(self) -> List[FrozenSet[int]]:
        return [subset_from_index(p, self.n) for p in self.positions()]

    def __iter__(self):
        return iter(self.members())

    def issubfamily(self, other: "SetFamily") -> bool:
        require_same_dimension(self, other)
        return self.mask & ~other.mask == 0

    def __str__(self):
        body = ", ".join(format_subset(s) for s in self.members())
        return f"SetFamily(n={self.n}, {{{body}}})"


def require_same_dimension(first: SetFamily, second: SetFamily):
    if first.n != second.n:
        raise DimensionError(f"families live on different cubes: n={first.n} and n={second.n}")


# -- constructors ------------------------------------------------------------


def family_from_sets(sets: Iterable[Iterable[int]], n: int) -> SetFamily:
    check_dimension(n)
    mask = 0
    for members in sets:
        subset = as_subset(members, n)
        bit = 1 << subset_index(subset, n)
        if mask & bit:
            raise FamilyFormatError(f"subset {{{format_subset(subset)}}} listed twice")
        mask |= bit
    return SetFamily(n, mask)


def empty_family(n: int) -> SetFamily:
    return SetFamily(n, 0)


def full_family(n: int) -> SetFamily:
    return SetFamily(n, (1 << (1 << check_dimension(n))) - 1)


def subcube(n: int, block: Iterable[int], chosen: Iterable[int]) -> SetFamily:
    """S_B^C: every subset meeting B exactly in C."""
    check_dimension(n)
    block, chosen = as_subset(block, n), as_subset(chosen, n)
    if not chosen <= block:
        raise PreconditionError("chosen set must lie inside the block")
    rest = frozenset(range(1, n + 1)) - block
    return SetFamily(n, subcube_positions(n, rest) << subset_index(chosen, n))


def dictatorship(n: int, j: int) -> SetFamily:
    """D_j: every subset containing j."""
    check_coordinate(check_dimension(n), j)
    return SetFamily(n, coordinate_mask(n, j) << (1 << (n - j)))


def complement(family: SetFamily) -> SetFamily:
    return SetFamily(family.n, full_family(family.n).mask ^ family.mask)


def symmetric_difference_size(first: SetFamily, second: SetFamily) -> int:
    require_same_dimension(first, second)
    return (first.mask ^ second.mask).bit_count()


# -- measure, boundary, influence --------------------------------------------


def measure(family: SetFamily) -> Dyadic:
    return Dyadic(family.size, family.n)


def coordinate_boundary(family: SetFamily, i: int) -> int:
    """Number of boundary edges in direction i."""
    n = family.n
    check_coordinate(n, i)
    low = coordinate_mask(n, i)
    stride = 1 << (n - i)
    return ((family.mask & low) ^ ((family.mask >> stride) & low)).bit_count()


def edge_boundary_size(family: SetFamily) -> int:
    return sum(coordinate_boundary(family, i) for i in range(1, family.n + 1))


def total_influence(family: SetFamily) -> Dyadic:
    # |dF| / 2^(n-1), written over 2^n so that n = 0 needs no special case
    return Dyadic(2 * edge_boundary_size(family), family.n)


def influence(family: SetFamily, i: int) -> Dyadic:
    return Dyadic(2 * coordinate_boundary(family, i), family.n)


def pivotal_family(family: SetFamily, i: int) -> SetFamily:
    n = family.n
    check_coordinate(n, i)
    low = coordinate_mask(n, i)
    stride = 1 << (n - i)
    without_i = family.mask & low
    with_i = (family.mask >> stride) & low
    pivotal = (without_i & ~with_i) | ((with_i & ~without_i) << stride)
    return SetFamily(n, pivotal)


def is_increasing(family: SetFamily) -> bool:
    n, mask = family.n, family.mask
    for i in range(1, n + 1):
        low = coordinate_mask(n, i)
        if (mask & low) & ~(mask >> (1 << (n - i))):
            return False
    return True


# -- slices ------------------------------------------------------------------


def slice_family(family: SetFamily, block: Iterable[int], chosen: Iterable[int]) -> SetFamily:
    """
    F_B^C = {S \\ C : S in F, S & B = C}, re-indexed onto [n] \\ B with the
    relative order of the remaining coordinates kept.
    """
    n = family.n
    block, chosen = as_subset(block, n), as_subset(chosen, n)
    if not chosen <= block:
        raise PreconditionError(
            f"slice needs C inside B, got C={{{format_subset(chosen)}}} B={{{format_subset(block)}}}"
        )
    mask = family.mask
    sliced = 0
    for t, column in enumerate(slice_columns(n, block, chosen)):
        if mask >> column & 1:
            sliced |= 1 << t
    return SetFamily(n - len(block), sliced)


def decompose_influence(family: SetFamily, subset: Iterable[int]):
    """
    Split I[F] into E_{B ~ P(S)} I[F_S^B] and the sum of Inf_i[F] over i in S.
    The two terms always add up to total_influence(F).
    """
    n = family.n
    subset = as_subset(subset, n)
    coords = sorted(subset)
    expectation = Dyadic(0)
    for bits in range(1 << len(coords)):
        chosen = frozenset(c for k, c in enumerate(coords) if bits >> k & 1)
        expectation += total_influence(slice_family(family, subset, chosen))
    expectation = expectation.halve(len(coords))
    influence_sum = sum((influence(family, i) for i in coords), Dyadic(0))
    return expectation, influence_sum