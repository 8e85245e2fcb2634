"""
Propagation
===========

GIN message passing interleaved between an input graph and a size-matched Cayley
expander, and a finite-difference sensitivity probe.
"""
from typing import List, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, validator

from .cayley import SlicedAdjacency, cayley_bank, select_n, slice_cayley
from .config import expander_config
from .enums import LayerTag, ScheduleKind
from .exceptions import GraphError
from .graphs import Graph


def glorot_uniform(rng: np.random.Generator, fan_in: int, fan_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))


class GinLayer(BaseModel):
    """``h_u = mlp((1 + epsilon) x_u + sum of x_v over neighbours v)``.

    The MLP is ``Linear -> ReLU -> Linear``; parallel edges count with multiplicity.
    """

    epsilon: float = 0.0
    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: np.ndarray
    seed: Optional[int] = None

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @validator("w2")
    def check_hidden_dim(cls, value, values):
        if "w1" in values and values["w1"].shape[1] != value.shape[0]:
            raise ValueError("hidden dimensions of the two affine maps differ")
        return value

    @property
    def in_dim(self) -> int:
        return self.w1.shape[0]

    @property
    def out_dim(self) -> int:
        return self.w2.shape[1]

    @classmethod
    def initialize(
        cls,
        in_dim: int,
        out_dim: int,
        rng: Union[np.random.Generator, int],
        epsilon: float = 0.0,
    ) -> "GinLayer":
        """Glorot-uniform weights, zero biases, hidden width ``out_dim``"""
        seed = rng if isinstance(rng, int) else None
        rng = np.random.default_rng(rng)
        return cls(
            epsilon=epsilon,
            w1=glorot_uniform(rng, in_dim, out_dim),
            b1=np.zeros(out_dim),
            w2=glorot_uniform(rng, out_dim, out_dim),
            b2=np.zeros(out_dim),
            seed=seed,
        )

    @classmethod
    def identity(cls, dim: int, epsilon: float = 0.0) -> "GinLayer":
        """Layer whose MLP is the identity on non-negative inputs"""
        eye = np.eye(dim)
        return cls(epsilon=epsilon, w1=eye, b1=np.zeros(dim), w2=eye, b2=np.zeros(dim))

    def mlp(self, z: np.ndarray) -> np.ndarray:
        return np.maximum(z @ self.w1 + self.b1, 0.0) @ self.w2 + self.b2


def gin_forward(layer: GinLayer, x: np.ndarray, adjacency: Graph) -> np.ndarray:
    """Example::

    >>> layer = GinLayer.identity(1)
    >>> g = Graph(num_nodes=4, edges=[(0, 1), (0, 2), (0, 3)])
    >>> gin_forward(layer, np.array([[0.0], [1.0], [2.0], [3.0]]), g)[0]
    array([6.])
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] != adjacency.num_nodes:
        raise GraphError(
            f"features of shape {x.shape} do not match {adjacency.num_nodes} nodes"
        )
    if x.shape[1] != layer.in_dim:
        raise GraphError(f"features have dim {x.shape[1]}, layer expects {layer.in_dim}")
    if not np.all(np.isfinite(x)):
        raise ValueError("features must be finite")
    aggregated = adjacency.adjacency @ x
    return layer.mlp((1.0 + layer.epsilon) * x + aggregated)


class EgpSchedule(BaseModel):
    """Graph used by each layer, in order.

    The default order runs the input graph first and alternates; ``flip`` starts on
    the Cayley graph instead.
    """

    tags: List[LayerTag]

    @property
    def num_layers(self) -> int:
        return len(self.tags)

    @classmethod
    def alternating(cls, num_layers: int, flip: bool = False) -> "EgpSchedule":
        first, second = LayerTag.INPUT_GRAPH, LayerTag.CAYLEY_GRAPH
        if flip:
            first, second = second, first
        return cls(tags=[first if t % 2 == 0 else second for t in range(num_layers)])

    @classmethod
    def input_only(cls, num_layers: int) -> "EgpSchedule":
        return cls(tags=[LayerTag.INPUT_GRAPH] * num_layers)

    @classmethod
    def tail(cls, num_layers: int) -> "EgpSchedule":
        """Input-graph layers followed by a single Cayley layer"""
        if num_layers < 1:
            return cls(tags=[])
        return cls(tags=[LayerTag.INPUT_GRAPH] * (num_layers - 1) + [LayerTag.CAYLEY_GRAPH])

    @classmethod
    def from_kind(
        cls, kind: Union[ScheduleKind, str], num_layers: int, flip: bool = False
    ) -> "EgpSchedule":
        kind = ScheduleKind(kind)
        if kind == ScheduleKind.ALTERNATING:
            return cls.alternating(num_layers, flip)
        if kind == ScheduleKind.INPUT_ONLY:
            return cls.input_only(num_layers)
        return cls.tail(num_layers)


class PropagationState(BaseModel):
    features: np.ndarray
    schedule: EgpSchedule
    n: int

    class Config:
        arbitrary_types_allowed = True


def cayley_adjacency(num_nodes: int) -> SlicedAdjacency:
    """Slice of the smallest Cayley graph with at least ``num_nodes`` nodes, aligned so
    input node ``i`` is Cayley node ``i``"""
    if num_nodes < 1:
        raise GraphError("input graph has no nodes")
    return slice_cayley(cayley_bank(select_n(num_nodes)), num_nodes)


def build_layers(
    dims: Sequence[int], seed: int, epsilon: float = 0.0
) -> List[GinLayer]:
    """One layer per consecutive pair of ``dims``; layer ``t`` draws from the ``t``-th
    child of ``SeedSequence(seed)``."""
    children = np.random.SeedSequence(seed).spawn(max(len(dims) - 1, 0))
    return [
        GinLayer.initialize(dims[t], dims[t + 1], np.random.default_rng(child), epsilon)
        for t, child in enumerate(children)
    ]


def run_schedule(
    x: np.ndarray,
    input_graph: Graph,
    schedule: EgpSchedule,
    layers: Sequence[GinLayer],
    cayley: Optional[Graph] = None,
) -> np.ndarray:
    if len(layers) != schedule.num_layers:
        raise GraphError(f"{len(layers)} layers for a schedule of {schedule.num_layers}")
    if cayley is None and LayerTag.CAYLEY_GRAPH in schedule.tags:
        cayley = cayley_adjacency(input_graph.num_nodes)
    h = np.asarray(x, dtype=np.float64)
    for tag, layer in zip(schedule.tags, layers):
        h = gin_forward(layer, h, input_graph if tag == LayerTag.INPUT_GRAPH else cayley)
    if not np.all(np.isfinite(h)):
        raise FloatingPointError("propagation produced non-finite features")
    return h


def _layer_dims(x: np.ndarray, num_layers: int, dims: Optional[Sequence[int]]) -> List[int]:
    if dims is None:
        return [x.shape[1]] * (num_layers + 1)
    dims = list(dims)
    if len(dims) != num_layers:
        raise GraphError(f"{len(dims)} output dims given for {num_layers} layers")
    return [x.shape[1]] + dims


def egp_forward(
    x: np.ndarray,
    input_graph: Graph,
    T: int,
    seed: int,
    dims: Optional[Sequence[int]] = None,
    kind: ScheduleKind = ScheduleKind.ALTERNATING,
    flip: bool = False,
    epsilon: float = 0.0,
) -> PropagationState:
    """Run ``T`` GIN layers alternating between ``input_graph`` and its Cayley slice."""
    if input_graph.num_nodes == 0:
        raise GraphError("input graph has no nodes")
    if T < 1:
        raise ValueError("T must be at least 1")
    x = np.asarray(x, dtype=np.float64)
    schedule = EgpSchedule.from_kind(kind, T, flip)
    layers = build_layers(_layer_dims(x, T, dims), seed, epsilon)
    n = select_n(input_graph.num_nodes)
    features = run_schedule(x, input_graph, schedule, layers)
    return PropagationState(features=features, schedule=schedule, n=n)


def degree_one_hot(graph: Graph) -> np.ndarray:
    """Default features: one-hot encoding of node degree"""
    degrees = graph.degrees
    features = np.zeros((graph.num_nodes, int(degrees.max(initial=0)) + 1))
    features[np.arange(graph.num_nodes), degrees] = 1.0
    return features


def jacobian_block(
    input_graph: Graph,
    schedule: EgpSchedule,
    layers: Sequence[GinLayer],
    x: np.ndarray,
    source: int,
    target: int,
    step: Optional[float] = None,
) -> np.ndarray:
    """Central-difference estimate of ``d h_target / d x_source``, shape ``(out, in)``"""
    step = expander_config.probe_step if step is None else step
    cayley = (
        cayley_adjacency(input_graph.num_nodes)
        if LayerTag.CAYLEY_GRAPH in schedule.tags
        else None
    )
    columns = []
    for k in range(x.shape[1]):
        plus = x.copy()
        minus = x.copy()
        plus[source, k] += step
        minus[source, k] -= step
        h_plus = run_schedule(plus, input_graph, schedule, layers, cayley)[target]
        h_minus = run_schedule(minus, input_graph, schedule, layers, cayley)[target]
        columns.append((h_plus - h_minus) / (2.0 * step))
    return np.stack(columns, axis=1)


def sensitivity_probe(
    input_graph: Graph,
    schedule: EgpSchedule,
    source: int,
    target: int,
    seeds: Optional[Sequence[int]] = None,
    dim: int = 8,
    normalize: bool = False,
    step: Optional[float] = None,
) -> float:
    """Frobenius norm of the Jacobian block of ``target``'s output with respect to
    ``source``'s input, averaged over seeds.

    Each seed draws Gaussian input features and fresh layer weights. With
    ``normalize`` the norm is divided by the sum of the norms over every source node,
    giving the share of the target's sensitivity owed to ``source``.
    """
    for node in (source, target):
        if not 0 <= node < input_graph.num_nodes:
            raise GraphError(f"node {node} out of range")
    seeds = expander_config.probe_seeds if seeds is None else seeds
    values = []
    for seed in seeds:
        x = np.random.default_rng(seed).standard_normal((input_graph.num_nodes, dim))
        layers = build_layers([dim] * (schedule.num_layers + 1), seed)
        influence = np.linalg.norm(
            jacobian_block(input_graph, schedule, layers, x, source, target, step)
        )
        if normalize:
            total = sum(
                np.linalg.norm(jacobian_block(input_graph, schedule, layers, x, z, target, step))
                for z in range(input_graph.num_nodes)
            )
            influence = influence / total if total > 0 else 0.0
        values.append(float(influence))
    return float(np.mean(values))
