"""
Graphs
======

Undirected multigraph model shared by every computation, synthetic generators and
GraphFile reading/writing.
"""
from collections import Counter
from pathlib import Path
from typing import FrozenSet, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, Field, PrivateAttr, root_validator
from scipy.sparse.csgraph import connected_components

from .enums import GraphFormat, SyntheticGraph
from .exceptions import GraphError

Edge = Tuple[int, int]


class Graph(BaseModel):
    """Undirected graph on nodes ``0..num_nodes-1``.

    Repeated edges are parallel edges: they add to degrees, to Laplacian entries
    and to message-passing sums.

    Example::

        >>> Graph(num_nodes=3, edges=[(0, 1), (1, 2)]).degrees.tolist()
        [1, 2, 1]
    """

    num_nodes: int
    edges: List[Edge] = []

    _adjacency: Optional[sp.csr_matrix] = PrivateAttr(default=None)
    _neighbor_sets: Optional[List[FrozenSet[int]]] = PrivateAttr(default=None)

    class Config:
        allow_mutation = False
        arbitrary_types_allowed = True

    @root_validator(skip_on_failure=True)
    def check_indices(cls, values):
        num_nodes = values["num_nodes"]
        if num_nodes < 0:
            raise ValueError("num_nodes must be non-negative")
        for u, v in values["edges"]:
            if not (0 <= u < num_nodes and 0 <= v < num_nodes):
                raise ValueError(f"edge {(u, v)} out of range for {num_nodes} nodes")
        return values

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def adjacency(self) -> sp.csr_matrix:
        """Symmetric CSR adjacency, entries are edge multiplicities"""
        if self._adjacency is None:
            if self.edges:
                u, v = np.asarray(self.edges, dtype=np.int64).T
            else:
                u = v = np.zeros(0, dtype=np.int64)
            rows = np.concatenate([u, v])
            cols = np.concatenate([v, u])
            data = np.ones(rows.size, dtype=np.float64)
            adjacency = sp.coo_matrix(
                (data, (rows, cols)), shape=(self.num_nodes, self.num_nodes)
            ).tocsr()
            adjacency.sum_duplicates()
            object.__setattr__(self, "_adjacency", adjacency)
        return self._adjacency

    @property
    def degrees(self) -> np.ndarray:
        return np.asarray(self.adjacency.sum(axis=1)).ravel().astype(np.int64)

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.num_nodes else 0

    def regular_degree(self) -> Optional[int]:
        """Common degree when the graph is regular, else None"""
        degrees = self.degrees
        if degrees.size and np.all(degrees == degrees[0]):
            return int(degrees[0])
        return None

    def neighbors(self, u: int) -> List[int]:
        """Neighbours of ``u`` repeated by multiplicity"""
        adjacency = self.adjacency
        start, stop = adjacency.indptr[u], adjacency.indptr[u + 1]
        out: List[int] = []
        for v, count in zip(adjacency.indices[start:stop], adjacency.data[start:stop]):
            out.extend([int(v)] * int(count))
        return out

    def neighbor_sets(self) -> List[FrozenSet[int]]:
        """Simple-graph neighbourhoods: multiplicity collapsed, self loops dropped"""
        if self._neighbor_sets is None:
            adjacency = self.adjacency
            sets = [
                frozenset(
                    int(v)
                    for v in adjacency.indices[adjacency.indptr[u] : adjacency.indptr[u + 1]]
                    if v != u
                )
                for u in range(self.num_nodes)
            ]
            object.__setattr__(self, "_neighbor_sets", sets)
        return self._neighbor_sets

    def multiplicity(self, u: int, v: int) -> int:
        return int(self.adjacency[u, v])

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.num_nodes and 0 <= v < self.num_nodes and self.multiplicity(u, v) > 0

    def unique_edges(self) -> List[Edge]:
        """Distinct undirected edges in order of first appearance"""
        seen = set()
        out = []
        for u, v in self.edges:
            key = (min(u, v), max(u, v))
            if key not in seen:
                seen.add(key)
                out.append((u, v))
        return out

    def edge_multiset(self) -> Counter:
        return Counter((min(u, v), max(u, v)) for u, v in self.edges)

    def is_connected(self) -> bool:
        if self.num_nodes <= 1:
            return True
        count, _ = connected_components(self.adjacency, directed=False)
        return count == 1

    def simple(self) -> "Graph":
        return Graph(
            num_nodes=self.num_nodes,
            edges=[(u, v) for u, v in self.unique_edges() if u != v],
        )

    def permuted(self, permutation: Sequence[int]) -> "Graph":
        """Relabel node ``u`` as ``permutation[u]``"""
        if sorted(permutation) != list(range(self.num_nodes)):
            raise GraphError("not a permutation of the node set")
        return Graph(
            num_nodes=self.num_nodes,
            edges=[(permutation[u], permutation[v]) for u, v in self.edges],
        )

    def induced(self, nodes: Sequence[int]) -> "Graph":
        """Induced sub-multigraph, node ``nodes[i]`` becomes ``i``"""
        index = {u: i for i, u in enumerate(nodes)}
        return Graph(
            num_nodes=len(index),
            edges=[(index[u], index[v]) for u, v in self.edges if u in index and v in index],
        )

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.num_nodes))
        graph.add_edges_from(self.edges)
        return graph

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        graph = nx.convert_node_labels_to_integers(graph, ordering="sorted")
        return cls(
            num_nodes=graph.number_of_nodes(),
            edges=[(int(u), int(v)) for u, v in graph.edges()],
        )


# Synthetic generators


def barbell(m: int) -> Graph:
    """Two copies of K_m joined by a single edge"""
    if m < 2:
        raise GraphError("barbell cliques need at least 2 nodes")
    return Graph.from_networkx(nx.barbell_graph(m, 0))


def path(k: int) -> Graph:
    if k < 1:
        raise GraphError("a path needs at least 1 node")
    return Graph.from_networkx(nx.path_graph(k))


def cycle(k: int) -> Graph:
    if k < 3:
        raise GraphError("a cycle needs at least 3 nodes")
    return Graph.from_networkx(nx.cycle_graph(k))


def complete(k: int) -> Graph:
    if k < 1:
        raise GraphError("a complete graph needs at least 1 node")
    return Graph.from_networkx(nx.complete_graph(k))


def binary_tree(depth: int) -> Graph:
    """Balanced binary tree, root 0, ``2^(depth+1) - 1`` nodes"""
    if depth < 0:
        raise GraphError("depth must be non-negative")
    return Graph.from_networkx(nx.balanced_tree(2, depth))


def synthetic(kind: Union[SyntheticGraph, str], size: int) -> Graph:
    builders = {
        SyntheticGraph.BARBELL: barbell,
        SyntheticGraph.PATH: path,
        SyntheticGraph.CYCLE: cycle,
        SyntheticGraph.COMPLETE: complete,
        SyntheticGraph.TREE: binary_tree,
    }
    return builders[SyntheticGraph(kind)](size)


# GraphFile I/O


class GraphDocument(BaseModel):
    """JSON form of a GraphFile"""

    num_nodes: int
    edges: List[Edge]
    n: Optional[int] = None
    generator_labels: Optional[List[str]] = Field(None, alias="labels")

    class Config:
        allow_population_by_field_name = True

    @root_validator(pre=True)
    def accept_generator_labels_key(cls, values):
        if "generator_labels" in values and "labels" not in values:
            values = dict(values)
            values["labels"] = values.pop("generator_labels")
        return values

    @root_validator(skip_on_failure=True)
    def check_labels(cls, values):
        labels = values.get("generator_labels")
        if labels is not None and len(labels) != len(values["edges"]):
            raise ValueError("generator_labels must have one entry per edge")
        return values

    def to_graph(self) -> Graph:
        return Graph(num_nodes=self.num_nodes, edges=self.edges)


def infer_format(path: Union[str, Path]) -> GraphFormat:
    return GraphFormat.JSON if Path(path).suffix.lower() == ".json" else GraphFormat.EDGELIST


def parse_edgelist(text: str) -> Graph:
    """Parse "u v" lines. A ``# num_nodes: N`` comment fixes the node count,
    otherwise it is one more than the largest index."""
    num_nodes = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            if key.strip() == "num_nodes":
                num_nodes = int(value)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer node index in {raw!r}")
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: negative node index")
        edges.append((u, v))
    if num_nodes is None:
        num_nodes = max((max(e) for e in edges), default=-1) + 1
    return Graph(num_nodes=num_nodes, edges=edges)


def format_edgelist(graph: Graph) -> str:
    lines = [f"# num_nodes: {graph.num_nodes}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def read_graph(path: Union[str, Path], fmt: Optional[GraphFormat] = None) -> GraphDocument:
    """Read a GraphFile. Raises ``OSError`` on I/O failure and ``GraphError`` or
    pydantic ``ValidationError`` on malformed content."""
    fmt = GraphFormat(fmt) if fmt else infer_format(path)
    if fmt == GraphFormat.JSON:
        return GraphDocument.parse_file(path)
    graph = parse_edgelist(Path(path).read_text())
    return GraphDocument(num_nodes=graph.num_nodes, edges=graph.edges)


def write_graph(
    document: Union[Graph, GraphDocument],
    path: Union[str, Path],
    fmt: Optional[GraphFormat] = None,
) -> None:
    fmt = GraphFormat(fmt) if fmt else infer_format(path)
    if isinstance(document, Graph):
        document = GraphDocument(num_nodes=document.num_nodes, edges=document.edges)
    if fmt == GraphFormat.JSON:
        text = document.json(by_alias=False, exclude_none=True, indent=2)
    else:
        text = format_edgelist(document.to_graph())
    Path(path).write_text(text)
