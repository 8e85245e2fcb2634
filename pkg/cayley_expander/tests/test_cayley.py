from collections import Counter

import pytest

from ..cayley import (
    build_cayley,
    cayley_bank,
    prefix_connectivity_violations,
    select_n,
    slice_cayley,
)
from ..exceptions import GraphError, ModulusError
from ..modular_group import compose, generator_set, group_order, identity


def test_build_cayley_small():

    # 1. n = 3: 24 nodes, 4-regular, |E| = 2|V|
    g = build_cayley(3)
    graph = g.to_graph()
    assert g.num_nodes == 24
    assert graph.degrees.tolist() == [4] * 24
    assert graph.num_edges == 48

    # 2. vertex 0 is the identity, first level follows slot order
    assert g.elements[0] == identity(3)
    assert g.targets[0].tolist() == [1, 2, 3, 4]

    # 3. n = 5
    assert build_cayley(5).num_nodes == 120

    # 4. n = 2 keeps parallel edges
    g = build_cayley(2)
    graph = g.to_graph()
    assert g.num_nodes == 6
    assert graph.degrees.tolist() == [4] * 6
    assert max(graph.edge_multiset().values()) == 2
    assert graph.simple().regular_degree() == 2

    with pytest.raises(ModulusError):
        build_cayley(1)


def test_arcs_follow_group_multiplication():
    g = build_cayley(4)
    gens = generator_set(4)
    for u, v, slot in g.arcs:
        assert compose(g.elements[u], gens[slot]) == g.elements[v]
    assert len(g.arcs) == 4 * g.num_nodes
    assert g.index_of[g.elements[17]] == 17


def test_build_is_reproducible():
    assert build_cayley(6).targets.tolist() == build_cayley(6).targets.tolist()


def test_node_count_matches_order():
    for n in range(2, 12):
        assert build_cayley(n).num_nodes == group_order(n)


def test_vertex_transitivity_signature():
    for n in (3, 5, 7):
        graph = build_cayley(n).to_graph()
        degrees = graph.degrees
        signatures = {
            tuple(sorted(degrees[v] for v in graph.neighbors(u))) for u in range(graph.num_nodes)
        }
        assert len(signatures) == 1


def test_select_n():
    assert select_n(24) == 3
    assert select_n(25) == 4
    assert select_n(1) == 2
    assert select_n(100) == 5
    with pytest.raises(GraphError):
        select_n(0)


def test_slice():
    g = build_cayley(3)

    # 1. full slice
    full = slice_cayley(g, 24)
    assert full.degrees.tolist() == [4] * 24
    assert full.source_n == 3
    assert full.to_document().generator_labels == g.to_document().generator_labels

    # 2. single node
    single = slice_cayley(g, 1)
    assert single.num_nodes == 1 and single.edges == []

    # 3. partial slice of n = 5 is connected, degree at most 4
    part = slice_cayley(build_cayley(5), 100)
    assert part.is_connected()
    assert part.max_degree <= 4

    # 4. slice edges are parent edges
    parent = Counter(g.to_graph().edge_multiset())
    for edge, count in slice_cayley(g, 10).edge_multiset().items():
        assert parent[edge] >= count

    # 5. labels follow the kept edges
    part_document = part.to_document()
    assert part_document.n == 5
    assert len(part_document.generator_labels) == part.num_edges
    assert set(part_document.generator_labels) <= {"s1", "s2"}

    with pytest.raises(GraphError):
        slice_cayley(g, 0)
    with pytest.raises(GraphError):
        slice_cayley(g, 25)


def test_every_prefix_is_connected():
    for n in range(2, 12):
        assert prefix_connectivity_violations(build_cayley(n)) == []

    # direct check on a sample of prefixes
    g = build_cayley(5)
    for k in (2, 7, 33, 64, 119):
        assert slice_cayley(g, k).is_connected()


def test_bank_memoizes():
    assert cayley_bank(7) is cayley_bank(7)


def test_document_labels():
    document = build_cayley(3).to_document()
    assert document.n == 3
    assert len(document.generator_labels) == len(document.edges) == 48
    assert set(document.generator_labels) == {"s1", "s2"}
