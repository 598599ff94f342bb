"""
Lower bounds on the influence of fractional lex families.

Order 1, with mu = (mu- + mu+)/2 = 2^-j + r:
    mu- <= r               gives  I[L_{mu-,mu+}] >= I[L_mu] + 2 mu-
    3r <= mu- <= mu/2      gives  I[L_{mu-,mu+}] >= I[L_mu] + 2/3 mu-
    mu = 1/4 + r is the base case of the first regime.
Order 2, when r <= mu_1^-(L) <= 3r, r <= mu_2^-(L) <= 3r and r <= c mu:
    I[L] >= I[L_mu] + r/2
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from cube.dyadic import Dyadic
from cube.exceptions import PreconditionError
from lex.decomposition import decompose_measure
from lex.influence import lex_influence

from .families import FracLexFamily, frac_influence

SMALL_MINUS = "mu_minus<=r"
MID_MINUS = "3r<=mu_minus<=mu/2"
ORDER2 = "r<=mu_i_minus<=3r"
OUT_OF_REGIME = "out_of_regime"

DEFAULT_ORDER2_C = Fraction(1, 6)


@dataclass(frozen=True)
class BoundReport:
    """
    lhs is the influence of the fractional family and rhs the claimed lower
    bound; slack = lhs - rhs. flagged marks j = 1 points of the second order-1
    regime, which lie outside the ambient j >= 2 decomposition.
    """

    hypothesis_regime: str
    lhs: Dyadic
    rhs: Optional[Fraction]
    slack: Optional[Fraction]
    mu: Dyadic
    j: Optional[int] = None
    r: Optional[Dyadic] = None
    base_case: bool = False
    flagged: bool = False

    @property
    def in_regime(self) -> bool:
        return self.hypothesis_regime != OUT_OF_REGIME

    @property
    def holds(self) -> bool:
        return not self.in_regime or self.slack >= 0

    def to_dict(self) -> dict:
        record = {
            "hypothesis_regime": self.hypothesis_regime,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "mu": self.mu,
        }
        if self.j is not None:
            record.update(j=self.j, r=self.r)
        if self.base_case:
            record["base_case"] = True
        if self.flagged:
            record["flagged"] = True
        return record


def check_order1_bound(mu_minus, mu_plus) -> BoundReport:
    mu_minus, mu_plus = Dyadic.of(mu_minus), Dyadic.of(mu_plus)
    if not 0 <= mu_minus <= mu_plus <= 1:
        raise PreconditionError(f"order-1 check needs 0 <= mu- <= mu+ <= 1, got ({mu_minus}, {mu_plus})")
    family = FracLexFamily.order1(mu_minus, mu_plus)
    lhs = frac_influence(family)
    mu = family.measure
    if mu == 0 or mu == 1:
        return BoundReport(OUT_OF_REGIME, lhs, None, None, mu)

    split = decompose_measure(mu, allow_upper=True)
    j, r = split.j, split.r
    lex = lex_influence(mu).to_fraction()
    minus = mu_minus.to_fraction()
    if mu_minus <= r:
        rhs = lex + 2 * minus
        regime = SMALL_MINUS
    elif 3 * r <= mu_minus and 2 * mu_minus <= mu:
        rhs = lex + Fraction(2, 3) * minus
        regime = MID_MINUS
    else:
        return BoundReport(OUT_OF_REGIME, lhs, None, None, mu, j, r)

    return BoundReport(
        regime,
        lhs,
        rhs,
        lhs.to_fraction() - rhs,
        mu,
        j,
        r,
        base_case=regime == SMALL_MINUS and j == 2,
        flagged=j == 1,
    )


def check_order2_bound(family: FracLexFamily, c=DEFAULT_ORDER2_C) -> BoundReport:
    if family.k != 2:
        raise PreconditionError(f"order-2 check got a family of order {family.k}")
    c = Fraction(c)
    lhs = frac_influence(family)
    mu = family.measure
    if mu == 0 or mu > Dyadic(1, 1):
        return BoundReport(OUT_OF_REGIME, lhs, None, None, mu)

    split = decompose_measure(mu)
    r = split.r
    # mu_1^-(L) averages the values off coordinate 1, i.e. at the empty set and {2}
    mu1_minus = (family.value(()) + family.value({2})).halve()
    mu2_minus = (family.value(()) + family.value({1})).halve()
    hypotheses = (
        r <= mu1_minus <= 3 * r,
        r <= mu2_minus <= 3 * r,
        r.to_fraction() <= c * mu.to_fraction(),
    )
    if not all(hypotheses):
        return BoundReport(OUT_OF_REGIME, lhs, None, None, mu, split.j, r)

    rhs = (lex_influence(mu) + r.halve()).to_fraction()
    return BoundReport(ORDER2, lhs, rhs, lhs.to_fraction() - rhs, mu, split.j, r)
