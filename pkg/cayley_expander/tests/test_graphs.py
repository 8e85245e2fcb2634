import json

import networkx as nx
import pytest
from pydantic import ValidationError

from ..enums import GraphFormat
from ..exceptions import GraphError
from ..graphs import (
    Graph,
    GraphDocument,
    barbell,
    binary_tree,
    complete,
    cycle,
    parse_edgelist,
    path,
    read_graph,
    synthetic,
    write_graph,
)


def test_graph_validation():

    # 1. Out of range endpoint
    with pytest.raises(ValidationError):
        Graph(num_nodes=2, edges=[(0, 2)])

    # 2. Negative index
    with pytest.raises(ValidationError):
        Graph(num_nodes=2, edges=[(-1, 0)])


def test_multiplicity_and_degrees():
    g = Graph(num_nodes=3, edges=[(0, 1), (1, 0), (1, 2)])
    assert g.multiplicity(0, 1) == 2
    assert g.degrees.tolist() == [2, 3, 1]
    assert g.neighbors(1) == [0, 0, 2]
    assert g.neighbor_sets()[1] == frozenset({0, 2})
    assert g.simple().edges == [(0, 1), (1, 2)]
    assert g.regular_degree() is None
    assert cycle(5).regular_degree() == 2


def test_connectivity(k2):
    assert k2.is_connected()
    assert not Graph(num_nodes=3, edges=[(0, 1)]).is_connected()
    assert Graph(num_nodes=1).is_connected()


def test_generators():

    # 1. barbell: two K_m plus a bridge
    g = barbell(10)
    assert g.num_nodes == 20
    assert g.num_edges == 2 * 45 + 1
    assert g.has_edge(9, 10)

    # 2. path, cycle, complete, tree
    assert path(6).num_edges == 5
    assert cycle(4).degrees.tolist() == [2, 2, 2, 2]
    assert complete(5).num_edges == 10
    assert binary_tree(3).num_nodes == 15

    # 3. dispatch by name
    assert synthetic("path", 4).edges == path(4).edges

    with pytest.raises(GraphError):
        barbell(1)


def test_networkx_round_trip():
    g = Graph(num_nodes=4, edges=[(0, 1), (0, 1), (2, 3)])
    back = Graph.from_networkx(g.to_networkx())
    assert back.edge_multiset() == g.edge_multiset()
    assert back.num_nodes == 4


def test_permuted():
    g = path(3)
    p = g.permuted([2, 0, 1])
    assert p.edge_multiset() == Graph(num_nodes=3, edges=[(2, 0), (0, 1)]).edge_multiset()
    with pytest.raises(GraphError):
        g.permuted([0, 0, 1])


def test_parse_edgelist():
    text = "# a comment\n# num_nodes: 5\n0 1\n\n1 2\n1 2\n"
    g = parse_edgelist(text)
    assert g.num_nodes == 5
    assert g.multiplicity(1, 2) == 2

    # node count inferred without a header
    assert parse_edgelist("0 3\n").num_nodes == 4

    with pytest.raises(GraphError):
        parse_edgelist("0 1 2\n")
    with pytest.raises(GraphError):
        parse_edgelist("0 x\n")
    with pytest.raises(GraphError):
        parse_edgelist("-1 0\n")


def test_file_round_trip(tmp_path):
    g = Graph(num_nodes=6, edges=[(0, 1), (1, 0), (2, 3), (3, 4)])
    for fname, fmt in (("g.txt", None), ("g.json", None), ("g.dat", GraphFormat.JSON)):
        target = tmp_path / fname
        write_graph(g, target, fmt)
        back = read_graph(target, fmt).to_graph()
        assert back.num_nodes == g.num_nodes
        assert back.edge_multiset() == g.edge_multiset()


def test_json_document(tmp_path):
    target = tmp_path / "g.json"
    target.write_text(
        json.dumps({"num_nodes": 2, "edges": [[0, 1]], "n": 2, "labels": ["s1"]})
    )
    document = read_graph(target)
    assert document.generator_labels == ["s1"]
    assert document.n == 2

    document = GraphDocument.parse_obj(
        {"num_nodes": 2, "edges": [[0, 1]], "generator_labels": ["s2"]}
    )
    assert document.generator_labels == ["s2"]

    with pytest.raises(ValidationError):
        GraphDocument.parse_obj({"num_nodes": 2, "edges": [[0, 1]], "labels": []})

    # written documents use the generator_labels key
    write_graph(document, target)
    assert "generator_labels" in json.loads(target.read_text())


def test_networkx_oracle_degrees():
    g = barbell(6)
    reference = nx.barbell_graph(6, 0)
    assert g.degrees.tolist() == [d for _, d in sorted(reference.degree())]
