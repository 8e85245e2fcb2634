"""
Cayley graphs
=============

Breadth-first construction of Cay(SL(2, Z_n); S_n), BFS-prefix slicing and
the size selection used to match an input graph.
"""
import time
from collections import deque
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, PrivateAttr

from .enums import GeneratorSlot
from .exceptions import GraphError, ModulusError
from .graphs import Graph, GraphDocument
from .modular_group import ModMatrix, _mul, generator_set, group_order
from .utils import logger

Arc = Tuple[int, int, int]


class CayleyGraph(BaseModel):
    """Cayley graph with vertices in BFS discovery order.

    ``targets[u, slot]`` is the index of ``elements[u] @ generators[slot]``; vertex 0 is
    the identity.
    """

    n: int
    elements: List[ModMatrix]
    targets: np.ndarray

    _index_of: Optional[Dict[ModMatrix, int]] = PrivateAttr(default=None)

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @property
    def num_nodes(self) -> int:
        return len(self.elements)

    @property
    def arcs(self) -> List[Arc]:
        return [
            (u, int(v), slot)
            for u, row in enumerate(self.targets.tolist())
            for slot, v in enumerate(row)
        ]

    @property
    def index_of(self) -> Dict[ModMatrix, int]:
        if self._index_of is None:
            object.__setattr__(
                self, "_index_of", {g: i for i, g in enumerate(self.elements)}
            )
        return self._index_of

    def undirected_edges(self) -> List[Tuple[int, int, int]]:
        """One ``(u, v, slot)`` per undirected edge.

        The arc ``u -> u s`` and its reverse ``u s -> u`` (slot of ``s^-1``) form a
        single edge, kept under the s1/s2 slot. For ``n = 2`` the reverse of an
        s1-arc is itself an s1-arc, so each such pair of vertices carries two
        parallel edges.
        """
        rows = self.targets.tolist()
        return [
            (u, rows[u][slot], slot)
            for u in range(self.num_nodes)
            for slot in (GeneratorSlot.S1, GeneratorSlot.S2)
        ]

    def to_graph(self) -> Graph:
        return Graph(
            num_nodes=self.num_nodes,
            edges=[(u, v) for u, v, _ in self.undirected_edges()],
        )

    def to_document(self) -> GraphDocument:
        edges = self.undirected_edges()
        return GraphDocument(
            num_nodes=self.num_nodes,
            edges=[(u, v) for u, v, _ in edges],
            n=self.n,
            generator_labels=[GeneratorSlot(slot).label for _, _, slot in edges],
        )


class SlicedAdjacency(Graph):
    """Induced subgraph on the first ``num_nodes`` BFS indices of a Cayley graph"""

    source_n: int
    generator_labels: List[str] = []

    def to_document(self) -> GraphDocument:
        return GraphDocument(
            num_nodes=self.num_nodes,
            edges=self.edges,
            n=self.source_n,
            generator_labels=self.generator_labels,
        )


def build_cayley(n: int) -> CayleyGraph:
    """Build Cay(SL(2, Z_n); S_n) by BFS from the identity.

    Neighbours are expanded strictly in slot order (s1, s2, s1^-1, s2^-1), so the
    numbering is reproducible.

    Example::

        >>> g = build_cayley(3)
        >>> g.num_nodes, g.targets[0].tolist()
        (24, [1, 2, 3, 4])
    """
    if n < 2:
        raise ModulusError("modulus must be at least 2")
    started = time.time()
    generators = [g.entries for g in generator_set(n).elements]
    identity = (1, 0, 0, 1)

    index: Dict[Tuple[int, int, int, int], int] = {identity: 0}
    order = [identity]
    targets: List[List[int]] = []
    queue = deque([identity])
    while queue:
        element = queue.popleft()
        row = []
        for generator in generators:
            image = _mul(element, generator, n)
            if image not in index:
                index[image] = len(order)
                order.append(image)
                queue.append(image)
            row.append(index[image])
        targets.append(row)

    targets_array = np.asarray(targets, dtype=np.int64)
    assert not np.any(targets_array == np.arange(len(order))[:, None]), "self loop"
    targets_array.setflags(write=False)
    logger.info(
        "built Cayley graph n=%d with %d nodes in %.3f secs",
        n,
        len(order),
        time.time() - started,
    )
    return CayleyGraph.construct(
        n=n,
        elements=[ModMatrix._trusted(e, n) for e in order],
        targets=targets_array,
    )


@lru_cache(maxsize=32)
def cayley_bank(n: int) -> CayleyGraph:
    """Memoized :func:`build_cayley`; built graphs are read-only"""
    return build_cayley(n)


def select_n(target_nodes: int) -> int:
    """Smallest ``n >= 2`` whose Cayley graph has at least ``target_nodes`` nodes.

    Every ``n`` is checked in turn since ``group_order`` is not monotone.
    """
    if target_nodes < 1:
        raise GraphError("target_nodes must be at least 1")
    for n in range(2, target_nodes ** 3 + 2):
        if group_order(n) >= target_nodes:
            return n
    raise AssertionError("unreachable, group_order(n) >= n^3 / 2")


def slice_cayley(g: CayleyGraph, target_nodes: int) -> SlicedAdjacency:
    """Induced sub-multigraph on BFS indices ``0..target_nodes-1``"""
    if not 1 <= target_nodes <= g.num_nodes:
        raise GraphError(
            f"target_nodes must be in [1, {g.num_nodes}], got {target_nodes}"
        )
    kept = [
        (u, v, slot)
        for u, v, slot in g.undirected_edges()
        if u < target_nodes and v < target_nodes
    ]
    return SlicedAdjacency(
        num_nodes=target_nodes,
        edges=[(u, v) for u, v, _ in kept],
        source_n=g.n,
        generator_labels=[GeneratorSlot(slot).label for _, _, slot in kept],
    )


def prefix_connectivity_violations(g: CayleyGraph) -> List[int]:
    """Indices ``i > 0`` with no neighbour of smaller index.

    Empty exactly when every BFS prefix slice is connected: a prefix stays connected
    as it grows iff each new node attaches to an earlier one.
    """
    rows = g.targets.tolist()
    return [i for i in range(1, g.num_nodes) if min(rows[i]) >= i]
