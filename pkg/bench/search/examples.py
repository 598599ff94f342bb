"""
The two constructed families and their closed-form companion checks.

F_{n,s,t} = {S : [t] in S} | {S : [t-2] + {t+1..s} in S} meets
dist = 2 (|dF| - |dL|) exactly. The family
{S : {1,2} in S, S meets {3..t}} | {S : {3..t} in S}
has measure 1/4 + 2^-(t-1) and a small gap, yet pushing every coordinate-1
slice estimate through fails on it.
"""

from fractions import Fraction

from cube.exceptions import PreconditionError
from cube.family import SetFamily, check_dimension, measure, subcube, total_influence
from cube.stats import slice_stats
from lex.influence import lex_influence
from lex.segments import boundary_excess, stability_gap
from symmetry.distance import dist_to_lex_class


def make_tightness_family(n: int, s: int, t: int) -> SetFamily:
    check_dimension(n)
    if not (t >= 2 and t + 2 <= s <= n):
        raise PreconditionError(f"F_(n,s,t) needs t >= 2 and t + 2 <= s <= n, got ({n}, {s}, {t})")
    head = set(range(1, t + 1))
    tail = set(range(1, t - 1)) | set(range(t + 1, s + 1))
    return SetFamily(n, subcube(n, head, head).mask | subcube(n, tail, tail).mask)


def check_tightness_family(n: int, s: int, t: int) -> dict:
    family = make_tightness_family(n, s, t)
    excess = boundary_excess(family)
    dist = dist_to_lex_class(family)
    return {
        "family": family,
        "n": n,
        "s": s,
        "t": t,
        "m": family.size,
        "excess": excess,
        "dist": dist,
        "holds": dist == 2 * excess,
    }


def make_remark_family(n: int, t: int) -> SetFamily:
    check_dimension(n)
    if not 4 <= t <= n:
        raise PreconditionError(f"the family needs 4 <= t <= n, got t={t}, n={n}")
    middle = set(range(3, t + 1))
    pair = subcube(n, {1, 2}, {1, 2}).mask & ~subcube(n, middle, ()).mask
    return SetFamily(n, pair | subcube(n, middle, middle).mask)


def _compare(expected, actual) -> dict:
    return {"expected": expected, "actual": actual, "holds": expected == actual}


def check_remark_family(n: int, t: int) -> dict:
    family = make_remark_family(n, t)
    unit = Fraction(1, 1 << t)
    mu = measure(family)
    stats = slice_stats(family, 1)
    checks = {
        "measure": _compare(Fraction(1, 4) + 2 * unit, mu),
        "influence": _compare(1 + (8 * t - 24) * unit, total_influence(family)),
        "lex_influence": _compare(1 + (4 * t - 12) * unit, lex_influence(mu)),
        "mu_1_minus": _compare(4 * unit, stats.mu_minus),
        "eps_1_plus": _compare((8 * t - 24) * unit, stats.eps_plus),
    }
    return {
        "family": family,
        "n": n,
        "t": t,
        "eps": stability_gap(family),
        "checks": checks,
        "holds": all(check["holds"] for check in checks.values()),
    }
