"""
Per-family bootstrapping predicates.

single: if mu_i^- <= r then 2 mu_i^- + eps_i^+ / 2 <= eps.
pair:   if mu_1^- <= mu_2^- <= mu / 6 then one of
            2/3 mu_2^- + eps_2^+ / 2 <= eps,
            2 mu_1^- + eps_1^+ / 2 <= eps,
            1/6 mu(F \\ S_12) + eps_12^{++} / 4 <= eps
        holds, S_12 being the subcube of sets containing both coordinates.
Both need 0 < mu <= 1/2; the pair statement also needs eps > 0.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from cube.dyadic import Dyadic
from cube.exceptions import PreconditionError
from cube.family import SetFamily, measure, subcube
from cube.stats import slice_stats, slice_stats2
from lex.decomposition import decompose_measure
from lex.segments import stability_gap


@dataclass(frozen=True)
class BootstrapReport:
    applies: bool
    eps: Dyadic
    terms: Tuple[Fraction, ...] = ()
    holds: Optional[bool] = None

    def to_dict(self) -> dict:
        return {"applies": self.applies, "eps": self.eps, "terms": list(self.terms), "holds": self.holds}


def _measure_in_range(family: SetFamily) -> bool:
    mu = measure(family)
    return 0 < mu <= Dyadic(1, 1)


def bootstrap_single_report(family: SetFamily, i: int) -> BootstrapReport:
    eps = stability_gap(family)
    stats = slice_stats(family, i)
    if not _measure_in_range(family) or stats.mu_minus > decompose_measure(measure(family)).r:
        return BootstrapReport(False, eps)
    term = (2 * stats.mu_minus + stats.eps_plus.halve()).to_fraction()
    return BootstrapReport(True, eps, (term,), term <= eps.to_fraction())


def bootstrap_pair_report(family: SetFamily, i: int = 1, j: int = 2) -> BootstrapReport:
    if i == j:
        raise PreconditionError("the pair lemma needs two distinct coordinates")
    eps = stability_gap(family)
    if not _measure_in_range(family) or eps <= 0:
        return BootstrapReport(False, eps)
    mu = measure(family).to_fraction()
    first, second = slice_stats(family, i), slice_stats2(family, j, i)
    mu1, mu2 = first.mu_minus.to_fraction(), second.mu_minus.to_fraction()
    if not mu1 <= mu2 <= mu / 6:
        return BootstrapReport(False, eps)

    inside = (family.mask & subcube(family.n, {i, j}, {i, j}).mask).bit_count()
    outside = mu - Fraction(inside, 1 << family.n)
    terms = (
        Fraction(2, 3) * mu2 + second.eps_plus.to_fraction() / 2,
        2 * mu1 + first.eps_plus.to_fraction() / 2,
        outside / 6 + second.eps_pp.to_fraction() / 4,
    )
    bound = eps.to_fraction()
    return BootstrapReport(True, eps, terms, any(t <= bound for t in terms))
