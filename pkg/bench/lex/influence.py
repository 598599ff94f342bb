"""
Total influence of lexicographic segments.

I[L_mu] obeys the halving recursion I[L_mu] = I[L_2mu] / 2 + 2mu for mu <= 1/2
together with I[L_mu] = I[L_(1-mu)], which gives the value in O(log 1/mu) steps
without building the segment. g_n(m) = |dL| is the same quantity scaled by
2^(n-1).
"""

import logging
from functools import lru_cache

import numpy as np

from cube.dyadic import Dyadic
from cube.exceptions import PreconditionError
from cube.family import check_dimension

logger = logging.getLogger(__name__)

TABLE_MAX_LOG_DEN = 24


def lex_influence(mu) -> Dyadic:
    mu = Dyadic.of(mu)
    if mu.num < 0 or mu > 1:
        raise PreconditionError(f"measure {mu} is outside [0, 1]")
    return _lex_influence(mu.num, mu.log_den)


@lru_cache(maxsize=65536)
def _lex_influence(num: int, log_den: int) -> Dyadic:
    total = Dyadic(0)
    depth = 0
    while 0 < num < (1 << log_den):
        if 2 * num > (1 << log_den):
            num = (1 << log_den) - num
        # 2mu, weighted by the 2^-depth accumulated from the halvings
        total += Dyadic(2 * num, log_den + depth)
        log_den -= 1
        depth += 1
    return total


def lex_boundary(n: int, m: int) -> int:
    """g_n(m): the edge boundary of the m largest subsets of [n]."""
    check_dimension(n)
    if not 0 <= m <= (1 << n):
        raise PreconditionError(f"segment size {m} is outside [0, 2^{n}]")
    return lex_influence(Dyadic(m, n)).scaled(n) // 2


@lru_cache(maxsize=None)
def lex_boundary_table(n: int) -> np.ndarray:
    """g_n(m) for m = 0 .. 2^n, built from g_(n-1) in integers."""
    if not 0 <= n <= TABLE_MAX_LOG_DEN:
        raise PreconditionError(f"boundary tables are built for n <= {TABLE_MAX_LOG_DEN}, got {n}")
    table = np.zeros(2, dtype=np.int64)
    for k in range(1, n + 1):
        half = 1 << (k - 1)
        lower = table[: half + 1] + np.arange(half + 1, dtype=np.int64)
        table = np.concatenate([lower, lower[-2::-1]])
    table.flags.writeable = False
    logger.debug(f"Built lex boundary table for n={n} ({table.size} entries)")
    return table


def max_lex_influence(log_den: int):
    """
    Largest I[L_mu] over dyadic mu with denominator dividing 2^log_den, with
    the smallest mu attaining it.
    """
    table = lex_boundary_table(log_den)
    m = int(np.argmax(table))
    return Dyadic(2 * int(table[m]), log_den), Dyadic(m, log_den)
