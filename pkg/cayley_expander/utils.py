"""
Utils
=====
"""
import logging
from typing import Dict, Iterable, List, Optional

import numpy as np

logger = logging.getLogger("cayley_expander")

VERBOSITY_LEVELS = {
    0: "ERROR",
    1: "WARNING",
    2: "INFO",
    3: "DEBUG",
}


def set_verbose(verbose: str = "ERROR") -> None:
    """Set up the verbose level of cayley_expander.

    Args:
        verbose: One of ``"ERROR"``, ``"WARNING"``, ``"INFO"`` or ``"DEBUG"``.
    """
    levels = {
        "ERROR": logging.ERROR,
        "WARNING": logging.WARNING,
        "INFO": logging.INFO,
        "DEBUG": logging.DEBUG,
    }
    if verbose not in levels:
        raise ValueError(f"Unknown verbose level {verbose!r}, use one of {list(levels)}")
    logger.setLevel(levels[verbose])
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        logger.addHandler(handler)


def prime_factors(n: int) -> List[int]:
    """Distinct prime divisors of ``n`` by trial division.

    Example::

        >>> prime_factors(12)
        [2, 3]
    """
    if n < 1:
        raise ValueError("n must be positive")
    factors = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            factors.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        factors.append(n)
    return factors


def fit_log_constant(values: Iterable[float], sizes: Iterable[int]) -> float:
    """Smallest ``k`` with ``value <= k * ln(size)`` for every pair.

    Used to report fitted constants such as ``diam <= k log |V|``.
    """
    values = np.asarray(list(values), dtype=float)
    logs = np.log(np.asarray(list(sizes), dtype=float))
    if values.size == 0 or values.shape != logs.shape:
        raise ValueError("values and sizes must be non-empty and of equal length")
    if np.any(logs <= 0):
        raise ValueError("sizes must exceed 1")
    return float(np.max(values / logs))


def bfs_distances(
    neighbors: Dict, sources: Iterable, max_depth: Optional[int] = None
) -> Dict:
    """Unweighted BFS distances from ``sources`` over a neighbour mapping.

    ``neighbors`` maps a vertex to an iterable of vertices. Vertices further than
    ``max_depth`` are not visited.
    """
    dist = {s: 0 for s in sources}
    frontier = list(dist)
    depth = 0
    while frontier and (max_depth is None or depth < max_depth):
        depth += 1
        nxt = []
        for x in frontier:
            for y in neighbors[x]:
                if y not in dist:
                    dist[y] = depth
                    nxt.append(y)
        frontier = nxt
    return dist
