from dataclasses import dataclass, fields
from typing import Optional

from lex.segments import stability_gap

from .dyadic import Dyadic
from .exceptions import PreconditionError
from .family import SetFamily, check_coordinate, measure, slice_family


@dataclass(frozen=True)
class SliceStats:
    """
    Slice measures and slice gaps of a family along coordinate i, and along the
    pair (i, j) when a second coordinate is given. A "+" means the coordinate
    is in the set, "-" that it is not.
    """

    i: int
    mu_plus: Dyadic
    mu_minus: Dyadic
    eps_plus: Dyadic
    eps_minus: Dyadic
    j: Optional[int] = None
    mu_pp: Optional[Dyadic] = None
    mu_pm: Optional[Dyadic] = None
    mu_mp: Optional[Dyadic] = None
    mu_mm: Optional[Dyadic] = None
    eps_pp: Optional[Dyadic] = None
    eps_pm: Optional[Dyadic] = None
    eps_mp: Optional[Dyadic] = None
    eps_mm: Optional[Dyadic] = None

    def to_dict(self):
        values = ((f.name, getattr(self, f.name)) for f in fields(self))
        return {key: value for key, value in values if value is not None}


def _slice_pair(family, block, chosen):
    part = slice_family(family, block, chosen)
    return measure(part), stability_gap(part)


def slice_stats(family: SetFamily, i: int) -> SliceStats:
    check_coordinate(family.n, i)
    mu_plus, eps_plus = _slice_pair(family, {i}, {i})
    mu_minus, eps_minus = _slice_pair(family, {i}, ())
    return SliceStats(i, mu_plus, mu_minus, eps_plus, eps_minus)


def slice_stats2(family: SetFamily, i: int, j: int) -> SliceStats:
    check_coordinate(family.n, i)
    check_coordinate(family.n, j)
    if i == j:
        raise PreconditionError(f"two-coordinate statistics need distinct coordinates, got {i} twice")
    single = slice_stats(family, i)
    pair = {i, j}
    mu_pp, eps_pp = _slice_pair(family, pair, {i, j})
    mu_pm, eps_pm = _slice_pair(family, pair, {i})
    mu_mp, eps_mp = _slice_pair(family, pair, {j})
    mu_mm, eps_mm = _slice_pair(family, pair, ())
    return SliceStats(
        i,
        single.mu_plus,
        single.mu_minus,
        single.eps_plus,
        single.eps_minus,
        j=j,
        mu_pp=mu_pp,
        mu_pm=mu_pm,
        mu_mp=mu_mp,
        mu_mm=mu_mm,
        eps_pp=eps_pp,
        eps_pm=eps_pm,
        eps_mp=eps_mp,
        eps_mm=eps_mm,
    )
