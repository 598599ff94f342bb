from dataclasses import dataclass

from cube.dyadic import Dyadic
from cube.exceptions import PreconditionError


@dataclass(frozen=True)
class MeasureDecomposition:
    """mu = 2^-j + r with 2^-j < mu <= 2^(-j+1), so 0 < r <= 2^-j."""

    j: int
    r: Dyadic

    @property
    def power(self) -> Dyadic:
        return Dyadic(1, self.j)

    @property
    def mu(self) -> Dyadic:
        return self.power + self.r


def decompose_measure(mu, allow_upper: bool = False) -> MeasureDecomposition:
    """
    Split mu in (0, 1/2] as 2^-j + r. A power of two 2^(-j+1) takes the upper
    endpoint r = 2^-j, so 1/2 gives (2, 1/4) and 1/4 gives (3, 1/8).

    With allow_upper, measures in (1/2, 1) are accepted as well and come out
    with j = 1.
    """
    mu = Dyadic.of(mu)
    upper = Dyadic(1) if allow_upper else Dyadic(1, 1)
    if mu <= 0 or mu > upper or (allow_upper and mu == 1):
        raise PreconditionError(f"measure {mu} is outside (0, {'1)' if allow_upper else '1/2]'}")
    j = mu.log_den + 1 - (mu.num - 1).bit_length()
    return MeasureDecomposition(j, mu - Dyadic(1, j))


def lex_slice_profile(mu, i: int, n: int = None) -> Dyadic:
    """
    mu_i^-(L_mu): the share of the lex segment of measure mu lying outside the
    dictatorship D_i, measured inside the half-cube. It is 0 for i < j, 2r at
    i = j and at least mu/2 beyond.
    """
    mu = Dyadic.of(mu)
    if mu <= 0 or mu > Dyadic(1, 1):
        raise PreconditionError(f"measure {mu} is outside (0, 1/2]")
    if i < 1:
        raise PreconditionError(f"coordinate {i} must be positive")
    if n is None:
        n = max(i, mu.log_den)
    if n < i or n < mu.log_den:
        raise PreconditionError(f"L_{mu} with coordinate {i} does not fit on P([{n}])")

    universe = 1 << n
    start = universe - mu.scaled(n)
    bit = n - i

    def clear_below(x):
        # members of [0, x) whose bit `bit` is clear
        period = 1 << (bit + 1)
        return (x // period) * (1 << bit) + min(x % period, 1 << bit)

    outside = clear_below(universe) - clear_below(start)
    return Dyadic(outside, n - 1)
