"""
Fractional lexicographic families of order k <= 2.

A map L: P([k]) -> dyadics in [0, 1] stands for the family on [k + m] whose
slice over each B inside [k] is the lex segment of measure L(B). Measure and
influence do not depend on the padding m, so they are computed from the values
directly; associate() builds the family itself for cross-checks.
"""

from dataclasses import dataclass
from typing import Tuple

from cube.dyadic import Dyadic
from cube.exceptions import PreconditionError
from cube.family import MAX_DIMENSION, SetFamily
from lex.influence import lex_influence
from lex.segments import lex_segment

MAX_ORDER = 2


@dataclass(frozen=True)
class FracLexFamily:
    """values[index(B)] = L(B), with index(B) taken on [k] (coordinate 1 high)."""

    k: int
    values: Tuple[Dyadic, ...]

    def __post_init__(self):
        if self.k not in (1, MAX_ORDER):
            raise PreconditionError(f"fractional lex families have order 1 or 2, got {self.k}")
        values = tuple(Dyadic.of(v) for v in self.values)
        if len(values) != 1 << self.k:
            raise PreconditionError(f"order {self.k} needs {1 << self.k} values, got {len(values)}")
        for v in values:
            if v < 0 or v > 1:
                raise PreconditionError(f"value {v} is outside [0, 1]")
        object.__setattr__(self, "values", values)

    @classmethod
    def order1(cls, mu_minus, mu_plus) -> "FracLexFamily":
        """L_{mu-, mu+}: L(empty) = mu-, L({1}) = mu+."""
        return cls(1, (mu_minus, mu_plus))

    @classmethod
    def order2(cls, empty, one, two, both) -> "FracLexFamily":
        """Values at the empty set, {1}, {2} and {1, 2}."""
        return cls(2, (empty, two, one, both))

    def value(self, subset) -> Dyadic:
        subset = frozenset(subset)
        return self.values[sum(1 << (self.k - i) for i in subset)]

    @property
    def measure(self) -> Dyadic:
        return sum(self.values, Dyadic(0)).halve(self.k)

    @property
    def log_den(self) -> int:
        return max(v.log_den for v in self.values)

    def __str__(self):
        if self.k == 1:
            return f"L_({self.values[0]}, {self.values[1]})"
        labels = ("∅", "2", "1", "12")
        return "L{" + ", ".join(f"{b}: {v}" for b, v in zip(labels, self.values)) + "}"


def associate(family: FracLexFamily, m: int) -> SetFamily:
    n = family.k + m
    if m < family.log_den:
        raise PreconditionError(f"padding m={m} cannot realize {family}; need m >= {family.log_den}")
    if n > MAX_DIMENSION:
        raise PreconditionError(f"associated family would live on {n} > {MAX_DIMENSION} coordinates")
    mask = 0
    for index, value in enumerate(family.values):
        mask |= lex_segment(m, value.scaled(m)).mask << (index << m)
    return SetFamily(n, mask)


def frac_influence(family: FracLexFamily) -> Dyadic:
    """
    The average slice influence plus, for each i in [k], 2^-(k-1) times the sum
    of |L(B) - L(B + i)| over B without i. Lex segments are nested, so each of
    those differences is exactly the i-pivotal mass between two slices.
    """
    k, values = family.k, family.values
    expectation = sum((lex_influence(v) for v in values), Dyadic(0)).halve(k)
    influence_sum = Dyadic(0)
    for i in range(1, k + 1):
        bit = 1 << (k - i)
        for index, value in enumerate(values):
            if not index & bit:
                influence_sum += abs(values[index | bit] - value)
    return expectation + influence_sum.halve(k - 1)
