"""
Dynamics
========

Lazy random walks and mixing time.
"""
import time
import warnings
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel

from .config import expander_config
from .exceptions import (
    ConsistencyError,
    ConvergenceError,
    DisconnectedGraphError,
    GraphError,
    InvalidDistributionError,
)
from .graphs import Graph
from .utils import fit_log_constant, logger

MIXING_THRESHOLD = 0.25
DENSE_FILL = 0.1


class WalkOperator(BaseModel):
    """Lazy walk kernel ``P = I/2 + D^-1 A / 2`` (row-stochastic).

    For a k-regular graph this is ``I/2 + A/(2k)``. Distributions evolve as
    ``pi -> P^T pi``.
    """

    graph: Graph
    regular_degree: Optional[int]
    transition: sp.csr_matrix

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @property
    def num_nodes(self) -> int:
        return self.graph.num_nodes


class MixingResult(BaseModel):
    mixing_time: int
    worst_start_deviation: float
    worst_start: int
    trajectory: List[Tuple[int, float]]

    def write_trajectory_csv(self, path: Union[str, Path]) -> None:
        np.savetxt(
            path,
            np.asarray(self.trajectory, dtype=float),
            delimiter=",",
            header="step,deviation",
            comments="",
            fmt=["%d", "%.17g"],
        )


def walk_operator(graph: Graph, strict: bool = True) -> WalkOperator:
    """Build the lazy walk on ``graph``.

    With ``strict`` only regular graphs are accepted. Otherwise irregular graphs use
    the degree-normalized kernel whose stationary law is proportional to degree.
    """
    if graph.num_nodes == 0:
        raise GraphError("walk on an empty graph")
    degrees = graph.degrees.astype(np.float64)
    if np.any(degrees == 0):
        raise GraphError("lazy walk needs every node to have a neighbour")
    regular = graph.regular_degree()
    if strict and regular is None:
        raise GraphError("graph is not regular, pass strict=False for the degree-normalized walk")
    half = sp.identity(graph.num_nodes, format="csr") * 0.5
    transition = (half + sp.diags(0.5 / degrees) @ graph.adjacency).tocsr()
    return WalkOperator(graph=graph, regular_degree=regular, transition=transition)


def stationary_distribution(w: WalkOperator) -> np.ndarray:
    degrees = w.graph.degrees.astype(np.float64)
    return degrees / degrees.sum()


def _check_distribution(w: WalkOperator, pi: np.ndarray) -> None:
    if pi.shape != (w.num_nodes,):
        raise InvalidDistributionError(
            f"distribution has shape {pi.shape}, expected ({w.num_nodes},)"
        )
    if not np.all(np.isfinite(pi)) or np.any(pi < 0):
        raise InvalidDistributionError("distribution must be finite and non-negative")
    if abs(pi.sum() - 1.0) > 1e-10:
        raise InvalidDistributionError(f"distribution sums to {pi.sum()}, not 1")


def walk_step(w: WalkOperator, pi: Sequence[float]) -> np.ndarray:
    """One lazy step: stay with probability 1/2, else move along a uniform incident edge.

    Example::

        >>> walk_step(walk_operator(complete(2)), [1, 0]).tolist()
        [0.5, 0.5]
    """
    pi = np.asarray(pi, dtype=np.float64)
    _check_distribution(w, pi)
    return w.transition.T @ pi


def lazy_spectrum(w: WalkOperator) -> np.ndarray:
    """Eigenvalues ``mu_0 = 1 >= mu_1 >= ...`` of the walk operator"""
    dense = w.transition.toarray()
    if w.regular_degree is not None:
        values = np.linalg.eigvalsh((dense + dense.T) / 2.0)
    else:
        values = np.real(np.linalg.eigvals(dense))
    return np.sort(values)[::-1]


def mixing_time(
    graph: Graph,
    starts: Optional[Sequence[int]] = None,
    strict: bool = True,
    max_steps: Optional[int] = None,
) -> MixingResult:
    """First step ``l`` with ``||P^l pi - u||_1 <= 1/4`` for every point-mass start.

    Point masses suffice: the deviation is convex over the simplex. ``starts`` defaults
    to every vertex. With ``strict=False`` irregular graphs are measured against the
    degree-proportional stationary law.

    Raises:
        ConvergenceError: when ``max_steps`` (default ``10 |V|``) is exceeded.
    """
    if not graph.is_connected():
        raise DisconnectedGraphError("mixing time is undefined on a disconnected graph")
    w = walk_operator(graph, strict=strict)
    if w.regular_degree is None:
        warnings.warn("Mixing measured against the degree-proportional stationary law")
        target = stationary_distribution(w)
    else:
        target = np.full(graph.num_nodes, 1.0 / graph.num_nodes)
    starts = list(range(graph.num_nodes)) if starts is None else list(starts)
    if not starts or any(not 0 <= s < graph.num_nodes for s in starts):
        raise GraphError("starts must be a non-empty list of node indices")
    cap = (
        expander_config.mixing_cap_factor * graph.num_nodes
        if max_steps is None
        else max_steps
    )

    operator = w.transition.T.tocsr()
    if operator.nnz > DENSE_FILL * graph.num_nodes ** 2:
        operator = operator.toarray()
    mass = np.zeros((graph.num_nodes, len(starts)))
    mass[starts, np.arange(len(starts))] = 1.0

    started = time.time()
    trajectory = []
    step = 0
    previous = np.inf
    while True:
        deviations = np.abs(mass - target[:, None]).sum(axis=0)
        worst = int(np.argmax(deviations))
        deviation = float(deviations[worst])
        trajectory.append((step, deviation))
        if deviation > previous + 1e-10:
            raise ConsistencyError(f"deviation increased at step {step}")
        previous = deviation
        if deviation <= MIXING_THRESHOLD:
            break
        if step >= cap:
            raise ConvergenceError(f"walk did not mix within {cap} steps")
        mass = operator @ mass
        step += 1
    logger.info(
        "mixing time %d on %d nodes in %.3f secs", step, graph.num_nodes, time.time() - started
    )
    return MixingResult(
        mixing_time=step,
        worst_start_deviation=deviation,
        worst_start=starts[worst],
        trajectory=trajectory,
    )


def mixing_constant(results: Sequence[MixingResult], sizes: Sequence[int]) -> float:
    """Fitted ``c`` with ``mixing_time <= c ln |V|``"""
    return fit_log_constant([r.mixing_time for r in results], sizes)
