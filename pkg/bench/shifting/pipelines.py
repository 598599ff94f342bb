import logging
from itertools import combinations
from typing import Iterable, List, Tuple

from cube.dyadic import Dyadic
from cube.exceptions import PreconditionError
from cube.family import (
    SetFamily,
    as_subset,
    coordinate_mask,
    format_subset,
    is_increasing,
    measure,
    pivotal_family,
    subset_index,
)

from .operators import shift

logger = logging.getLogger(__name__)


def monotonize_all(family: SetFamily) -> SetFamily:
    """S_{0,n} o ... o S_{0,1}: push every member up, one coordinate at a time."""
    for i in range(1, family.n + 1):
        family = shift(family, (), {i})
    return family


def _require_increasing(family: SetFamily, operation: str):
    if not is_increasing(family):
        logger.warning(f"⚠️ {operation} refused a family that is not increasing")
        raise PreconditionError(f"{operation} needs an increasing family")


def is_up_closed_in(family: SetFamily, i: int) -> bool:
    n, mask = family.n, family.mask
    low = coordinate_mask(n, i)
    return (mask & low) & ~(mask >> (1 << (n - i))) == 0


def is_n_stable(family: SetFamily) -> bool:
    """Fixed by every S_{n,i} and closed under adding n."""
    n = family.n
    if n == 0:
        return True
    return is_up_closed_in(family, n) and all(
        shift(family, {n}, {i}) == family for i in range(1, n)
    )


def n_stabilize(family: SetFamily) -> SetFamily:
    """S_{n,n-1} o ... o S_{n,1} applied to an increasing family."""
    _require_increasing(family, "n-stabilization")
    n = family.n
    for i in range(1, n):
        family = shift(family, {n}, {i})
    return family


def cascade_to_dictatorship(family: SetFamily) -> List[SetFamily]:
    """
    Compress towards coordinate 1 in stages: stage k applies S_{S,1} for every
    k-subset S of {2..n}, in itertools.combinations order. Returns the n - 1
    stage results; the last one lies inside D_1.
    """
    _require_increasing(family, "cascade")
    if measure(family) > Dyadic(1, 1):
        logger.warning(f"⚠️ Cascade refused a family of measure {measure(family)}")
        raise PreconditionError("cascade needs measure at most 1/2")
    n = family.n
    stages = []
    for k in range(1, n):
        for source in combinations(range(2, n + 1), k):
            family = shift(family, source, {1})
        stages.append(family)
        logger.debug(f"Cascade stage {k}: {family.size} members")
    return stages


def pivotal_exchange(family: SetFamily, first: Iterable[int], second: Iterable[int]) -> Tuple[SetFamily, SetFamily]:
    """
    For A != B pivotal in direction n of an increasing n-stable family,
    F1 = (F \\ {A}) | {B \\ {n}} and F2 = (F \\ {B}) | {A \\ {n}}.
    """
    n = family.n
    first, second = as_subset(first, n), as_subset(second, n)
    problems = []
    if not is_increasing(family):
        problems.append("family is not increasing")
    elif not is_n_stable(family):
        problems.append("family is not n-stable")
    if first == second:
        problems.append("A and B coincide")
    pivotal = pivotal_family(family, n) if n else SetFamily(0)
    for name, subset in (("A", first), ("B", second)):
        if n == 0 or subset not in pivotal:
            problems.append(f"{name}={{{format_subset(subset)}}} is not n-pivotal")
    if problems:
        logger.warning(f"⚠️ Pivotal exchange refused: {'; '.join(problems)}")
        raise PreconditionError("pivotal exchange: " + "; ".join(problems))

    def exchange(removed, lowered):
        mask = family.mask & ~(1 << subset_index(removed, n))
        return SetFamily(n, mask | (1 << subset_index(lowered - {n}, n)))

    return exchange(first, second), exchange(second, first)
