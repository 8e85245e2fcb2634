import math

import numpy as np
import pytest

from ..cayley import cayley_bank, select_n
from ..dynamics import (
    lazy_spectrum,
    mixing_constant,
    mixing_time,
    stationary_distribution,
    walk_operator,
    walk_step,
)
from ..exceptions import ConvergenceError, GraphError, InvalidDistributionError
from ..graphs import barbell, complete, path
from ..spectral import eigen_gap


def test_walk_operator_is_stochastic():
    for graph in (complete(5), cayley_bank(3).to_graph(), cayley_bank(2).to_graph()):
        w = walk_operator(graph)
        assert np.allclose(np.asarray(w.transition.sum(axis=1)).ravel(), 1.0, atol=1e-12)
        assert w.regular_degree is not None

    w = walk_operator(path(5), strict=False)
    assert np.allclose(np.asarray(w.transition.sum(axis=1)).ravel(), 1.0, atol=1e-12)
    assert w.regular_degree is None

    with pytest.raises(GraphError):
        walk_operator(path(5))


def test_walk_step(k2):
    # 1. uniform is fixed on a regular graph
    w = walk_operator(complete(5))
    assert np.allclose(walk_step(w, np.full(5, 0.2)), 0.2)

    # 2. K2: half stays, half moves
    assert walk_step(walk_operator(k2), [1.0, 0.0]).tolist() == [0.5, 0.5]

    # 3. Cayley graph of SL(2, Z_3): 1/2 at the start, 1/8 on each neighbour
    w = walk_operator(cayley_bank(3).to_graph())
    pi = np.zeros(24)
    pi[0] = 1.0
    after = walk_step(w, pi)
    assert after[0] == pytest.approx(0.5)
    assert sorted(np.flatnonzero(after).tolist()) == [0, 1, 2, 3, 4]
    assert np.allclose(after[1:5], 0.125)

    # 4. invalid distributions
    with pytest.raises(InvalidDistributionError):
        walk_step(w, np.zeros(24))
    with pytest.raises(InvalidDistributionError):
        walk_step(w, np.full(3, 1 / 3))
    negative = np.full(24, 1 / 24)
    negative[0] = -0.01
    negative[1] = 2 / 24 + 0.01
    with pytest.raises(InvalidDistributionError):
        walk_step(w, negative)


def test_stationary_distribution():
    w = walk_operator(path(3), strict=False)
    pi = stationary_distribution(w)
    assert pi.tolist() == [0.25, 0.5, 0.25]
    assert np.allclose(walk_step(w, pi), pi)


def test_mixing_small(k2):
    assert mixing_time(complete(5)).mixing_time == 2
    result = mixing_time(k2)
    assert result.mixing_time == 1
    assert result.trajectory == [(0, 1.0), (1, 0.0)]


def test_mixing_trajectory_is_monotone():
    result = mixing_time(cayley_bank(5).to_graph())
    deviations = [d for _, d in result.trajectory]
    assert all(b <= a + 1e-10 for a, b in zip(deviations, deviations[1:]))
    assert deviations[-1] <= 0.25
    assert deviations[-2] > 0.25
    assert result.worst_start_deviation == deviations[-1]


def test_mixing_cap():
    with pytest.raises(ConvergenceError):
        mixing_time(barbell(12), strict=False, max_steps=5)


def test_mixing_logarithmic_on_cayley_graphs():
    results, sizes = [], []
    for n in (3, 5, 7, 11):
        graph = cayley_bank(n).to_graph()
        results.append(mixing_time(graph, starts=[0]))
        sizes.append(graph.num_nodes)
    c = mixing_constant(results, sizes)
    for result, size in zip(results, sizes):
        assert result.mixing_time <= c * math.log(size) + 1e-12
    # vertex transitivity: one start is as bad as any
    assert mixing_time(cayley_bank(3).to_graph()).mixing_time == results[0].mixing_time


def test_mixing_barbell_versus_cayley():
    # barbell(m) has 2m nodes; compare against the smallest Cayley graph at least as large
    sizes = (10, 20, 40, 60)
    bottleneck, expander, nodes = [], [], []
    for m in sizes:
        with pytest.warns(UserWarning):
            result = mixing_time(barbell(m), starts=[0], strict=False, max_steps=20000)
        bottleneck.append(result.mixing_time)
        graph = cayley_bank(select_n(2 * m)).to_graph()
        expander.append(mixing_time(graph, starts=[0]).mixing_time)
        nodes.append(graph.num_nodes)

    # superlinear in m on the barbell
    per_clique_node = [t / m for t, m in zip(bottleneck, sizes)]
    assert per_clique_node == sorted(per_clique_node)
    assert len(set(per_clique_node)) == len(sizes)
    assert bottleneck[-1] / bottleneck[0] > (sizes[-1] / sizes[0]) ** 1.5

    # logarithmic on the Cayley graphs
    for t, size in zip(expander, nodes):
        assert t <= 3 * expander[0] * math.log(size) / math.log(nodes[0])
    gaps = [b / c for b, c in zip(bottleneck, expander)]
    assert gaps[-1] > 4 * gaps[0]
    assert bottleneck[-1] >= 3 * expander[-1]


def test_mixing_cayley_beats_barbell_at_24_nodes():
    cayley = mixing_time(cayley_bank(3).to_graph())
    with pytest.warns(UserWarning):
        bottleneck = mixing_time(barbell(12), strict=False, max_steps=5000)
    assert cayley.mixing_time < bottleneck.mixing_time


def test_lazy_spectrum_matches_normalized_gap():
    for graph in (cayley_bank(3).to_graph(), cayley_bank(4).to_graph(), path(7)):
        mu = lazy_spectrum(walk_operator(graph, strict=False))
        assert mu[0] == pytest.approx(1.0)
        assert abs((1 - mu[1]) * 2 - eigen_gap(graph).lambda1_normalized) < 1e-8
