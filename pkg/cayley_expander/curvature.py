"""
Curvature
=========

Per-edge balanced Forman and Ollivier curvature.

Balanced Forman follows Topping et al. (2022). For an edge ``i ~ j`` on the simple
graph (parallel edges collapsed) with degrees ``d_i, d_j``::

    Ric(i, j) = 2/d_i + 2/d_j - 2 + 2 |T| / max(d_i, d_j) + |T| / min(d_i, d_j)
                + (|Q_i| + |Q_j|) / (gamma * max(d_i, d_j))

``T`` are the triangles on the edge. ``Q_i`` are the neighbours ``k`` of ``i``, not
adjacent to ``j``, that close a 4-cycle ``i - k - w - j`` with ``w`` not adjacent to ``i``.
``gamma`` is the largest number of such ``w`` reachable through one ``k``. The last
term is dropped when there are no 4-cycles, and ``Ric = 0`` when either endpoint
has degree 1.

Ollivier curvature is ``1 - W1(m_u, m_v)`` where ``m_x`` keeps ``idleness`` at ``x``
and spreads the rest over incident edges, weighted by multiplicity.
"""
import time
from fractions import Fraction
from multiprocessing import Pool
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
import ot
from pydantic import BaseModel

from .config import expander_config
from .exceptions import GraphError
from .graphs import Graph
from .utils import bfs_distances, logger

Edge = Tuple[int, int]

# Worker-side graph, set by the pool initializer.
_graph: Optional[Graph] = None
_idleness: float = 0.5


def _check_edge(graph: Graph, edge: Edge) -> Tuple[int, int]:
    u, v = edge
    if u == v or not graph.has_edge(u, v):
        raise GraphError(f"{edge} is not an edge of the graph")
    return u, v


def _four_cycle_support(
    nbrs: List[frozenset], i: int, j: int
) -> Tuple[int, int]:
    """``(|Q_i|, largest w-count)`` for 4-cycles based at ``i`` through ``j``"""
    count = 0
    widest = 0
    for k in nbrs[i] - nbrs[j] - {j}:
        closing = (nbrs[k] & nbrs[j]) - nbrs[i] - {i}
        if closing:
            count += 1
            widest = max(widest, len(closing))
    return count, widest


def balanced_forman_exact(graph: Graph, edge: Edge) -> Fraction:
    """Balanced Forman curvature as an exact rational"""
    i, j = _check_edge(graph, edge)
    nbrs = graph.neighbor_sets()
    d_i, d_j = len(nbrs[i]), len(nbrs[j])
    if min(d_i, d_j) == 0:
        raise GraphError(f"edge {edge} has a degree-0 endpoint")
    if min(d_i, d_j) == 1:
        return Fraction(0)
    d_max, d_min = max(d_i, d_j), min(d_i, d_j)
    triangles = len(nbrs[i] & nbrs[j])
    squares_i, gamma_i = _four_cycle_support(nbrs, i, j)
    squares_j, gamma_j = _four_cycle_support(nbrs, j, i)
    gamma = max(gamma_i, gamma_j)

    value = Fraction(2, d_i) + Fraction(2, d_j) - 2
    value += Fraction(2 * triangles, d_max) + Fraction(triangles, d_min)
    if gamma > 0:
        value += Fraction(squares_i + squares_j, gamma * d_max)
    return value


def balanced_forman(graph: Graph, edge: Edge) -> float:
    """Example::

    >>> balanced_forman(complete(3), (0, 1))
    1.5
    """
    return float(balanced_forman_exact(graph, edge))


def _walk_measure(graph: Graph, x: int, idleness: float) -> Dict[int, float]:
    neighbours = graph.neighbors(x)
    measure = {x: idleness}
    share = (1.0 - idleness) / len(neighbours)
    for y in neighbours:
        measure[y] = measure.get(y, 0.0) + share
    return measure


def ollivier(graph: Graph, edge: Edge, idleness: Optional[float] = None) -> float:
    """Ollivier curvature with the lazy measure, W1 solved exactly by network simplex.

    Both supports lie within one hop of the edge, so transport costs only need
    distances up to 3 and come from a BFS truncated at that depth.
    """
    idleness = expander_config.idleness if idleness is None else idleness
    if not 0.0 <= idleness < 1.0:
        raise ValueError(f"idleness must be in [0, 1), got {idleness}")
    u, v = _check_edge(graph, edge)
    source = _walk_measure(graph, u, idleness)
    target = _walk_measure(graph, v, idleness)
    adjacency_lists = graph.neighbor_sets()
    cost = np.empty((len(source), len(target)))
    for row, x in enumerate(source):
        dist = bfs_distances(adjacency_lists, [x], max_depth=3)
        for col, y in enumerate(target):
            cost[row, col] = dist[y]
    a = np.fromiter(source.values(), dtype=np.float64)
    b = np.fromiter(target.values(), dtype=np.float64)
    # the masses agree up to rounding, renormalize so the solver sees equal totals
    a /= a.sum()
    b /= b.sum()
    return 1.0 - float(ot.emd2(a, b, cost))


class EdgeCurvature(BaseModel):
    u: int
    v: int
    balanced_forman: float
    ollivier: float


class CurvatureSummary(BaseModel):
    min: float
    max: float
    mean: float


class CurvatureReport(BaseModel):
    """Curvatures of every distinct edge in edge-list order"""

    idleness: float
    per_edge: List[EdgeCurvature]
    balanced_forman: CurvatureSummary
    ollivier: CurvatureSummary

    def to_csv(self, path: Union[str, Path]) -> None:
        rows = np.asarray(
            [(e.u, e.v, e.balanced_forman, e.ollivier) for e in self.per_edge],
            dtype=float,
        ).reshape(-1, 4)
        np.savetxt(
            path,
            rows,
            delimiter=",",
            header="u,v,forman,ollivier",
            comments="",
            fmt=["%d", "%d", "%.17g", "%.17g"],
        )


def _init_worker(graph: Graph, idleness: float) -> None:
    global _graph, _idleness
    _graph = graph
    _idleness = idleness


def _edge_curvature(edge: Edge) -> EdgeCurvature:
    u, v = edge
    return EdgeCurvature(
        u=u,
        v=v,
        balanced_forman=balanced_forman(_graph, edge),
        ollivier=ollivier(_graph, edge, _idleness),
    )


def _summary(values: List[float]) -> CurvatureSummary:
    array = np.asarray(values, dtype=float)
    return CurvatureSummary(min=array.min(), max=array.max(), mean=array.mean())


def curvature_report(
    graph: Graph, idleness: Optional[float] = None, workers: Optional[int] = None
) -> CurvatureReport:
    """Both curvatures on every distinct edge.

    With ``workers > 1`` edges are spread over a process pool; output order is the
    edge order regardless of the worker count.
    """
    idleness = expander_config.idleness if idleness is None else idleness
    workers = expander_config.workers if workers is None else workers
    edges = [(u, v) for u, v in graph.unique_edges() if u != v]
    if not edges:
        raise GraphError("graph has no edges")
    started = time.time()
    if workers > 1:
        chunksize, extra = divmod(len(edges), workers * 4)
        if extra:
            chunksize += 1
        with Pool(processes=workers, initializer=_init_worker, initargs=(graph, idleness)) as pool:
            per_edge = list(pool.imap(_edge_curvature, edges, chunksize=chunksize))
    else:
        _init_worker(graph, idleness)
        per_edge = [_edge_curvature(edge) for edge in edges]
    logger.info(
        "%8f secs for curvature of %d edges with %d workers",
        time.time() - started,
        len(edges),
        workers,
    )
    return CurvatureReport(
        idleness=idleness,
        per_edge=per_edge,
        balanced_forman=_summary([e.balanced_forman for e in per_edge]),
        ollivier=_summary([e.ollivier for e in per_edge]),
    )


def oversquashing_margin(report: CurvatureReport, delta: float = 1.0) -> bool:
    """True when no edge has balanced Forman curvature at or below ``-2 + delta``"""
    return all(e.balanced_forman > -2.0 + delta for e in report.per_edge)
