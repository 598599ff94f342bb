from typing import FrozenSet, Iterable, List

from cube.dyadic import Dyadic
from cube.exceptions import PreconditionError
from cube.family import (
    SetFamily,
    check_dimension,
    edge_boundary_size,
    measure,
    subset_from_index,
    total_influence,
)

from .influence import lex_boundary, lex_influence


def lex_greater(first: Iterable[int], second: Iterable[int]) -> bool:
    """S > T iff the smallest element of S ^ T lies in S."""
    first, second = frozenset(first), frozenset(second)
    if first == second:
        raise PreconditionError("lexicographic comparison needs two different sets")
    return min(first ^ second) in first


def lex_order(n: int) -> List[FrozenSet[int]]:
    """P([n]) from the largest set down."""
    check_dimension(n)
    return [subset_from_index(p, n) for p in reversed(range(1 << n))]


def lex_segment(n: int, m: int) -> SetFamily:
    check_dimension(n)
    universe = 1 << n
    if not 0 <= m <= universe:
        raise PreconditionError(f"segment size {m} is outside [0, 2^{n}]")
    return SetFamily(n, ((1 << m) - 1) << (universe - m))


def lex_segment_of_measure(n: int, mu) -> SetFamily:
    mu = Dyadic.of(mu)
    if mu.log_den > n:
        raise PreconditionError(f"measure {mu} is not realizable on P([{n}])")
    return lex_segment(n, mu.scaled(n))


def stability_gap(family: SetFamily) -> Dyadic:
    """eps = I[F] - I[L_mu(F)]."""
    return total_influence(family) - lex_influence(measure(family))


def boundary_excess(family: SetFamily) -> int:
    """|dF| - |dL| for the lex segment of the same size."""
    return edge_boundary_size(family) - lex_boundary(family.n, family.size)
