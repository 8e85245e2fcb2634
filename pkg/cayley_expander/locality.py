"""
Locality
========

Generator-labelled balls in the finite Cayley graphs and in the Cayley graph of
SL(2, Z), compared through canonical generator words.
"""
import math
from collections import Counter
from typing import Any, Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from .cayley import CayleyGraph
from .config import expander_config
from .enums import GeneratorSlot
from .exceptions import GraphError, GraphTooLargeError
from .modular_group import ModMatrix, operator_norm_generator
from .utils import bfs_distances

Word = Tuple[int, ...]
IntMatrix = Tuple[int, int, int, int]

ALPHABET = len(GeneratorSlot)
# generators of SL(2, Z) in slot order, exact
INFINITE_GENERATORS: List[IntMatrix] = [(1, 1, 0, 1), (1, 0, 1, 1), (1, -1, 0, 1), (1, 0, -1, 1)]


class LabelledBall(BaseModel):
    """Induced ball around a vertex or an edge, vertices in canonical BFS order.

    ``words[i]`` is the first slot word (in BFS, slot order) from the anchor vertex
    to local vertex ``i``; ``center_word`` is ``()`` for a vertex ball and ``(s,)`` for
    the ball around the edge ``anchor -> anchor * s``. ``vertices`` holds the source
    identifiers: node indices for finite graphs, integer matrices for SL(2, Z).
    """

    center_word: Word
    radius: int
    alphabet: int = ALPHABET
    words: List[Word]
    arcs: List[Tuple[int, int, int]]
    vertices: List[Any]

    @property
    def num_vertices(self) -> int:
        return len(self.words)


def _int_mul(x: IntMatrix, y: IntMatrix) -> IntMatrix:
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


class _LazyNeighbors:
    """Mapping ``vertex -> [vertex * s for s in slots]`` computed on demand"""

    def __init__(self, step: Callable[[Hashable], List[Hashable]]):
        self.step = step
        self.cache: Dict[Hashable, List[Hashable]] = {}

    def __getitem__(self, x):
        if x not in self.cache:
            self.cache[x] = self.step(x)
        return self.cache[x]


def _labelled_ball(
    neighbors: _LazyNeighbors, anchor: Hashable, center_word: Word, radius: int
) -> LabelledBall:
    centers = [anchor] + [neighbors[anchor][s] for s in center_word]
    members = set()
    for center in centers:
        members.update(bfs_distances(neighbors, [center], max_depth=radius))

    index = {anchor: 0}
    order = [anchor]
    words: List[Word] = [()]
    position = 0
    while position < len(order):
        x = order[position]
        for slot, y in enumerate(neighbors[x]):
            if y in members and y not in index:
                index[y] = len(order)
                order.append(y)
                words.append(words[position] + (slot,))
        position += 1
    arcs = [
        (index[x], index[y], slot)
        for x in order
        for slot, y in enumerate(neighbors[x])
        if y in index
    ]
    return LabelledBall(
        center_word=center_word, radius=radius, words=words, arcs=arcs, vertices=order
    )


def _finite_neighbors(g: CayleyGraph) -> _LazyNeighbors:
    rows = g.targets
    return _LazyNeighbors(lambda x: [int(y) for y in rows[x]])


def _infinite_neighbors() -> _LazyNeighbors:
    return _LazyNeighbors(lambda x: [_int_mul(x, s) for s in INFINITE_GENERATORS])


def _check_radius(radius: int) -> None:
    if radius < 0:
        raise ValueError("radius must be non-negative")


def _edge_slot(g: CayleyGraph, edge: Tuple[int, int]) -> int:
    u, v = edge
    if not 0 <= u < g.num_nodes:
        raise GraphError(f"{edge} is not an edge of the Cayley graph")
    for slot, target in enumerate(g.targets[u]):
        if target == v:
            return slot
    raise GraphError(f"{edge} is not an edge of the Cayley graph")


def neighborhood(g: CayleyGraph, e: Tuple[int, int], hops: int) -> LabelledBall:
    """Induced labelled subgraph on vertices within ``hops`` of either endpoint of ``e``.

    The lowest slot joining the endpoints labels the edge.
    """
    _check_radius(hops)
    slot = _edge_slot(g, e)
    return _labelled_ball(_finite_neighbors(g), e[0], (slot,), hops)


def vertex_ball(g: CayleyGraph, vertex: int, radius: int) -> LabelledBall:
    _check_radius(radius)
    if not 0 <= vertex < g.num_nodes:
        raise GraphError(f"vertex {vertex} out of range")
    return _labelled_ball(_finite_neighbors(g), vertex, (), radius)


def _check_infinite_radius(radius: int) -> None:
    _check_radius(radius)
    if radius > expander_config.infinite_ball_max_radius:
        raise GraphTooLargeError(
            f"radius {radius} exceeds the limit of {expander_config.infinite_ball_max_radius}"
        )


def infinite_ball(r: int) -> LabelledBall:
    """Ball of radius ``r`` at the identity of the Cayley graph of SL(2, Z).

    Example::

        >>> infinite_ball(1).num_vertices
        5
    """
    _check_infinite_radius(r)
    return _labelled_ball(_infinite_neighbors(), (1, 0, 0, 1), (), r)


def infinite_neighborhood(slot: int, hops: int) -> LabelledBall:
    """Ball around the edge ``I -> s`` of the Cayley graph of SL(2, Z)"""
    _check_infinite_radius(hops + 1)
    return _labelled_ball(_infinite_neighbors(), (1, 0, 0, 1), (GeneratorSlot(slot).value,), hops)


def labelled_isomorphic(b1: LabelledBall, b2: LabelledBall) -> bool:
    """Compare balls through the map sending equal generator words to each other.

    Example::

        >>> labelled_isomorphic(infinite_ball(2), infinite_ball(2))
        True
    """
    if b1.alphabet != b2.alphabet:
        raise ValueError(f"alphabet mismatch: {b1.alphabet} != {b2.alphabet}")
    if b1.center_word != b2.center_word or b1.radius != b2.radius:
        return False
    if len(b1.words) != len(b2.words):
        return False
    index2 = {word: i for i, word in enumerate(b2.words)}
    mapping = [index2.get(word) for word in b1.words]
    if any(i is None for i in mapping):
        return False
    mapped = Counter((mapping[x], mapping[y], slot) for x, y, slot in b1.arcs)
    return mapped == Counter(b2.arcs)


def sphere_sizes(ball: LabelledBall) -> List[int]:
    """Vertex counts at each exact distance from the anchor"""
    counts = Counter(len(word) for word in ball.words)
    return [counts.get(r, 0) for r in range(max(counts) + 1)]


def tree_like_radius(n: int) -> int:
    """Largest integer ``r`` with ``r < ln(n - 1) / (2 ln phi)``, phi the golden ratio.

    Balls of that radius at the identity of G_n and of the SL(2, Z) graph agree.

    Example::

        >>> tree_like_radius(19)
        3
    """
    if n < 2:
        raise ValueError("modulus must be at least 2")
    bound = math.log(n - 1) / (2.0 * math.log(operator_norm_generator()))
    return max(0, math.ceil(bound) - 1)


def faithful_modulus(hops: int) -> int:
    """Smallest ``n`` with ``n - 1 > phi^(2 (hops + 1))``.

    From that modulus on, every element in a ``hops``-neighbourhood of an edge has
    entries below ``(n - 1) / 2`` in absolute value, so reduction mod ``n`` is injective
    on it and the neighbourhoods agree across moduli.
    """
    if hops < 0:
        raise ValueError("hops must be non-negative")
    return math.floor(operator_norm_generator() ** (2 * (hops + 1))) + 2


def project_ball(ball: LabelledBall, g: CayleyGraph) -> Optional[List[int]]:
    """Reduce the matrices of an SL(2, Z) ball mod ``g.n`` and look them up in ``g``.

    Returns the node indices in ball order, or None when two ball vertices collide
    (reduction is not injective on the ball).
    """
    index = g.index_of
    images = [index[ModMatrix.reduce(*matrix, g.n)] for matrix in ball.vertices]
    return images if len(set(images)) == len(images) else None


def divergence_radius(g: CayleyGraph, max_radius: Optional[int] = None) -> Optional[int]:
    """First radius where the identity balls of ``g`` and of SL(2, Z) differ in size"""
    max_radius = expander_config.infinite_ball_max_radius if max_radius is None else max_radius
    _check_infinite_radius(max_radius)
    finite = bfs_distances(_finite_neighbors(g), [0], max_depth=max_radius)
    infinite = bfs_distances(_infinite_neighbors(), [(1, 0, 0, 1)], max_depth=max_radius)
    finite_counts = Counter(finite.values())
    infinite_counts = Counter(infinite.values())
    for r in range(max_radius + 1):
        if finite_counts.get(r, 0) != infinite_counts.get(r, 0):
            return r
    return None
