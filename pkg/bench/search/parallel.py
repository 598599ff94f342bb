import functools
import logging
import multiprocessing
from typing import Callable, Sequence, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")


def map_reduce(map_function: Callable[..., T], reduce_function: Callable[[T, T], T], units: Sequence, jobs: int = 1) -> T:
    """
    reduce(reduce_function, map(map_function, units)).

    Results come back in unit order whatever the worker count, and every
    reduce_function used here is associative, so jobs never changes the
    outcome. map_function must be picklable (a module-level function or a
    functools.partial of one).
    """
    if not units:
        raise ValueError("map_reduce needs at least one work unit")
    jobs = max(1, min(int(jobs), len(units)))
    if jobs == 1:
        results = [map_function(unit) for unit in units]
    else:
        logger.info(f"🔍 Spreading {len(units)} work units over {jobs} processes")
        with multiprocessing.Pool(processes=jobs) as pool:
            results = pool.map(map_function, units, chunksize=1)
    logger.debug(f"Reducing {len(results)} partial results")
    return functools.reduce(reduce_function, results)
