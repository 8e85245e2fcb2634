"""
Spectral
========

Laplacian spectra, Cheeger constant and conductance, diameter and the Mohar
diameter bound.
"""
import math
import time
import warnings
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from pydantic import BaseModel
from scipy.sparse.csgraph import shortest_path

from .cayley import cayley_bank
from .config import expander_config
from .dynamics import lazy_spectrum, walk_operator
from .enums import EigenMode
from .exceptions import (
    ConsistencyError,
    ConvergenceError,
    DisconnectedGraphError,
    GraphError,
    GraphTooLargeError,
)
from .graphs import Graph
from .utils import fit_log_constant, logger

CHEEGER_CHUNK = 1 << 16


class EigenGap(BaseModel):
    lambda1: float
    lambda1_normalized: float


class ConductanceBound(BaseModel):
    """Bounds derived from the normalized gap ``lambda1_normalized``.

    ``conductance_lower <= phi <= conductance_upper`` and ``h <= cheeger_upper``.
    """

    lambda1_normalized: float
    conductance_lower: float
    conductance_upper: float
    cheeger_upper: float


class SpectralReport(BaseModel):
    num_nodes: int
    num_edges: int
    max_degree: int
    lambda1: float
    lambda1_normalized: float
    cheeger_exact: Optional[float] = None
    conductance_exact: Optional[float] = None
    cheeger_lower: float
    cheeger_upper: float
    conductance_upper: float
    diameter: int
    mohar_bound: int
    log_base: str = "e"
    eigen_mode: EigenMode


def laplacian(graph: Graph) -> sp.csr_matrix:
    """``L = D - A`` with degrees and entries counting multiplicity"""
    return (sp.diags(graph.degrees.astype(np.float64)) - graph.adjacency).tocsr()


def normalized_laplacian(graph: Graph) -> sp.csr_matrix:
    """``I - D^-1/2 A D^-1/2``; isolated nodes get a zero row"""
    degrees = graph.degrees.astype(np.float64)
    inv_sqrt = np.zeros_like(degrees)
    nonzero = degrees > 0
    inv_sqrt[nonzero] = 1.0 / np.sqrt(degrees[nonzero])
    scale = sp.diags(inv_sqrt)
    identity = sp.diags(nonzero.astype(np.float64))
    return (identity - scale @ graph.adjacency @ scale).tocsr()


def laplacian_apply(graph: Graph, f: Sequence[float]) -> np.ndarray:
    """``Lf(v) = deg(v) f(v) - sum of f(w) over edges vw``

    Example::

        >>> laplacian_apply(complete(2), [1, -1]).tolist()
        [2.0, -2.0]
    """
    f = np.asarray(f, dtype=np.float64)
    if f.shape != (graph.num_nodes,):
        raise GraphError(
            f"vertex function has shape {f.shape}, expected ({graph.num_nodes},)"
        )
    return laplacian(graph) @ f


def _require_connected(graph: Graph) -> None:
    if graph.num_nodes < 2:
        raise GraphError("spectral gap needs at least 2 nodes")
    if not graph.is_connected():
        raise DisconnectedGraphError("graph is disconnected, lambda1 = 0")


def _deflated(matrix: sp.csr_matrix, null_vector: np.ndarray, shift: float):
    """Operator ``matrix + shift * q q^T`` moving the known null direction ``q`` to ``shift``"""
    q = null_vector / np.linalg.norm(null_vector)
    return spla.LinearOperator(
        matrix.shape,
        matvec=lambda x: matrix @ x + shift * q * (q @ x),
        dtype=np.float64,
    )


def _lanczos_smallest(
    matrix: sp.csr_matrix, null_vector: np.ndarray, shift: float, tol: float
) -> float:
    size = matrix.shape[0]
    operator = _deflated(matrix, null_vector, shift)
    v0 = np.random.default_rng(0).uniform(-1, 1, size)
    try:
        values = spla.eigsh(
            operator,
            k=1,
            which="SA",
            tol=tol,
            v0=v0,
            ncv=min(size, 40),
            maxiter=50 * size,
            return_eigenvectors=False,
        )
    except spla.ArpackNoConvergence as e:
        raise ConvergenceError(f"Lanczos did not converge: {e}")
    return float(values[0])


def _power_smallest(
    matrix: sp.csr_matrix, null_vector: np.ndarray, bound: float, tol: float
) -> float:
    """Shifted power iteration on ``bound * I - L`` restricted to the complement of
    the null direction.

    Stops once successive Rayleigh quotients differ by < tol and the residual
    ``||L x - rho x||`` is at most tol.
    """
    size = matrix.shape[0]
    q = null_vector / np.linalg.norm(null_vector)
    x = np.random.default_rng(0).uniform(-1, 1, size)
    x -= q * (q @ x)
    x /= np.linalg.norm(x)
    previous = None
    for _ in range(max(1000, 200 * size)):
        lx = matrix @ x
        lx -= q * (q @ lx)
        rho = float(x @ lx)
        residual = float(np.linalg.norm(lx - rho * x))
        if previous is not None and abs(rho - previous) < tol and residual <= tol:
            return rho
        previous = rho
        y = bound * x - lx
        x = y / np.linalg.norm(y)
    raise ConvergenceError("power iteration exhausted its iteration budget")


def _resolve_mode(graph: Graph, mode: EigenMode) -> EigenMode:
    mode = EigenMode(mode)
    threshold = expander_config.exact_eigen_max_nodes
    if mode == EigenMode.AUTO:
        return EigenMode.EXACT if graph.num_nodes <= threshold else EigenMode.ITERATIVE
    if mode == EigenMode.EXACT and graph.num_nodes > threshold:
        warnings.warn(
            f"Dense eigensolve on {graph.num_nodes} nodes exceeds the configured "
            f"threshold of {threshold}, this may be slow"
        )
    if mode != EigenMode.EXACT and graph.num_nodes < 10:
        # too small for a Krylov subspace, the dense solve is exact and instant
        return EigenMode.EXACT
    return mode


def eigen_gap(
    graph: Graph, mode: EigenMode = EigenMode.AUTO, tol: Optional[float] = None
) -> EigenGap:
    """Smallest positive eigenvalue of the Laplacian and of the normalized Laplacian.

    Whenever the graph is small enough for a dense walk spectrum, in any mode, the
    normalized gap is checked against ``2 - 2 mu1`` of the lazy random walk.

    Raises:
        DisconnectedGraphError: when the graph is not connected.
        ConvergenceError: when an iterative solver runs out of iterations.
        ConsistencyError: when the lazy-walk identity fails.
    """
    _require_connected(graph)
    tol = expander_config.eigen_tol if tol is None else tol
    mode = _resolve_mode(graph, mode)
    started = time.time()
    lap = laplacian(graph)
    norm_lap = normalized_laplacian(graph)
    degrees = graph.degrees.astype(np.float64)

    if mode == EigenMode.EXACT:
        lambda1 = float(np.linalg.eigvalsh(lap.toarray())[1])
        regular = graph.regular_degree()
        if regular:
            lambda1_normalized = lambda1 / regular
        else:
            lambda1_normalized = float(np.linalg.eigvalsh(norm_lap.toarray())[1])
    elif mode == EigenMode.ITERATIVE:
        ones = np.ones(graph.num_nodes)
        lambda1 = _lanczos_smallest(lap, ones, 2.0 * graph.max_degree + 1.0, tol)
        lambda1_normalized = _lanczos_smallest(norm_lap, np.sqrt(degrees), 3.0, tol)
    else:
        ones = np.ones(graph.num_nodes)
        lambda1 = _power_smallest(lap, ones, 2.0 * graph.max_degree, tol)
        lambda1_normalized = _power_smallest(norm_lap, np.sqrt(degrees), 2.0, tol)
    logger.info(
        "eigen gap (%s) on %d nodes: lambda1=%.6g lambda1'=%.6g in %.3f secs",
        mode.value,
        graph.num_nodes,
        lambda1,
        lambda1_normalized,
        time.time() - started,
    )
    if lambda1 <= 1e-12:
        raise DisconnectedGraphError("lambda1 = 0, graph is disconnected")

    if graph.num_nodes <= expander_config.exact_eigen_max_nodes:
        mu1 = lazy_spectrum(walk_operator(graph, strict=False))[1]
        if abs(lambda1_normalized - (2.0 - 2.0 * mu1)) > max(1e-8, 10 * tol):
            raise ConsistencyError(
                f"lambda1'={lambda1_normalized} disagrees with 2 - 2 mu1 = {2 - 2 * mu1}"
            )
    return EigenGap(lambda1=lambda1, lambda1_normalized=lambda1_normalized)


def _cut_minima(graph: Graph) -> Tuple[float, float]:
    """Exhaustive ``(h, phi)`` over all vertex subsets.

    Subsets are enumerated as bitmasks that exclude the last vertex; each mask stands
    for itself and its complement.
    """
    size = graph.num_nodes
    if size > expander_config.cheeger_max_nodes:
        raise GraphTooLargeError(
            f"exact Cheeger enumeration is capped at {expander_config.cheeger_max_nodes} "
            f"nodes, got {size}"
        )
    if size < 2:
        raise GraphError("Cheeger constant needs at least 2 nodes")
    started = time.time()
    edges = np.asarray(graph.edges, dtype=np.int64).reshape(-1, 2)
    u, v = edges[:, 0], edges[:, 1]
    degrees = graph.degrees
    total_volume = int(degrees.sum())
    shifts = np.arange(size, dtype=np.int64)
    best_h = math.inf
    best_phi = math.inf
    stop = 1 << (size - 1)
    for start in range(1, stop, CHEEGER_CHUNK):
        masks = np.arange(start, min(start + CHEEGER_CHUNK, stop), dtype=np.int64)
        bits = ((masks[:, None] >> shifts) & 1).astype(np.int8)
        boundary = (bits[:, u] != bits[:, v]).sum(axis=1).astype(np.float64)
        part = bits.sum(axis=1)
        rest = size - part
        volume = bits.astype(np.int64) @ degrees
        rest_volume = total_volume - volume
        for count, admissible in ((part, 2 * part <= size), (rest, 2 * rest <= size)):
            if admissible.any():
                best_h = min(best_h, float(np.min(boundary[admissible] / count[admissible])))
        for vol, other in ((volume, rest_volume), (rest_volume, volume)):
            admissible = (vol > 0) & (vol <= other)
            if admissible.any():
                best_phi = min(best_phi, float(np.min(boundary[admissible] / vol[admissible])))
    logger.info("Cheeger enumeration on %d nodes in %.3f secs", size, time.time() - started)
    return best_h, best_phi


def cheeger_exact(graph: Graph) -> float:
    """``min |dA| / |A|`` over ``0 < |A| <= |V|/2``, boundary counting multiplicity.

    Example::

        >>> cheeger_exact(path(6))
        0.3333333333333333
    """
    return _cut_minima(graph)[0]


def conductance_exact(graph: Graph) -> float:
    """``min |dA| / vol(A)`` over subsets with ``vol(A) <= vol(V)/2``"""
    return _cut_minima(graph)[1]


def conductance_bound(graph: Graph, gap: Optional[EigenGap] = None) -> ConductanceBound:
    gap = gap or eigen_gap(graph)
    upper = math.sqrt(2.0 * gap.lambda1_normalized)
    return ConductanceBound(
        lambda1_normalized=gap.lambda1_normalized,
        conductance_lower=gap.lambda1_normalized / 2.0,
        conductance_upper=upper,
        cheeger_upper=graph.max_degree * upper,
    )


def diameter(graph: Graph) -> int:
    """All-sources BFS diameter"""
    if graph.num_nodes == 0:
        raise GraphError("empty graph has no diameter")
    if graph.num_nodes == 1:
        return 0
    longest = 0
    for start in range(0, graph.num_nodes, 512):
        sources = np.arange(start, min(start + 512, graph.num_nodes))
        dist = shortest_path(graph.adjacency, directed=False, unweighted=True, indices=sources)
        if np.isinf(dist).any():
            raise DisconnectedGraphError("graph is disconnected, diameter is infinite")
        longest = max(longest, int(dist.max()))
    return longest


def mohar_bound(max_degree: int, lambda1: float, num_nodes: int) -> int:
    """``2 ceil((D + lambda1) / (4 lambda1) * ln(|V| - 1))``.

    With two nodes the logarithm vanishes; the bound is then the trivial diameter
    ``|V| - 1``.
    """
    if num_nodes <= 2:
        return num_nodes - 1
    if lambda1 <= 0:
        raise DisconnectedGraphError("lambda1 must be positive")
    return 2 * math.ceil((max_degree + lambda1) / (4.0 * lambda1) * math.log(num_nodes - 1))


def diameter_and_mohar(graph: Graph, lambda1: Optional[float] = None) -> Tuple[int, int]:
    """Raises ConsistencyError when the diameter exceeds the bound."""
    if lambda1 is None:
        lambda1 = eigen_gap(graph).lambda1
    diam = diameter(graph)
    bound = mohar_bound(graph.max_degree, lambda1, graph.num_nodes)
    if diam > bound:
        raise ConsistencyError(f"diameter {diam} exceeds the Mohar bound {bound}")
    return diam, bound


def analyze(
    graph: Graph,
    mode: EigenMode = EigenMode.AUTO,
    tol: Optional[float] = None,
    exact_cheeger: Optional[bool] = None,
) -> SpectralReport:
    """Full spectral report. The exact Cheeger constant is included when the graph is
    small enough for exhaustive enumeration, unless ``exact_cheeger`` says otherwise."""
    resolved = _resolve_mode(graph, mode) if graph.num_nodes >= 2 else EigenMode.EXACT
    gap = eigen_gap(graph, resolved, tol)
    bound = conductance_bound(graph, gap)
    diam, mohar = diameter_and_mohar(graph, gap.lambda1)
    if exact_cheeger is None:
        exact_cheeger = graph.num_nodes <= expander_config.cheeger_max_nodes
    h = phi = None
    if exact_cheeger:
        h, phi = _cut_minima(graph)
    return SpectralReport(
        num_nodes=graph.num_nodes,
        num_edges=graph.num_edges,
        max_degree=graph.max_degree,
        lambda1=gap.lambda1,
        lambda1_normalized=gap.lambda1_normalized,
        cheeger_exact=h,
        conductance_exact=phi,
        cheeger_lower=gap.lambda1 / 2.0,
        cheeger_upper=math.sqrt(2.0 * graph.max_degree * gap.lambda1),
        conductance_upper=bound.conductance_upper,
        diameter=diam,
        mohar_bound=mohar,
        eigen_mode=resolved,
    )


class ExpansionProfile(BaseModel):
    moduli: List[int]
    lambda1_normalized: Dict[int, float]
    minimum: float
    slope: float


def expansion_profile(moduli: Sequence[int]) -> ExpansionProfile:
    """Normalized gap of the Cayley graph for each modulus, its minimum and the slope
    of a least-squares line through ``(n, lambda1')``."""
    values = {n: eigen_gap(cayley_bank(n).to_graph()).lambda1_normalized for n in moduli}
    ns = np.asarray(list(values), dtype=float)
    gaps = np.asarray(list(values.values()))
    slope = float(np.polyfit(ns, gaps, 1)[0]) if len(values) > 1 else 0.0
    return ExpansionProfile(
        moduli=list(moduli),
        lambda1_normalized=values,
        minimum=float(gaps.min()),
        slope=slope,
    )


def diameter_constant(moduli: Sequence[int]) -> float:
    """Fitted ``k`` with ``diam(G_n) <= k ln |V|`` across the given moduli"""
    graphs = [cayley_bank(n).to_graph() for n in moduli]
    return fit_log_constant([diameter(g) for g in graphs], [g.num_nodes for g in graphs])
