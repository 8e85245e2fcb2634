import pytest

from ..cayley import cayley_bank
from ..enums import GeneratorSlot
from ..exceptions import GraphError, GraphTooLargeError
from ..locality import (
    divergence_radius,
    faithful_modulus,
    infinite_ball,
    infinite_neighborhood,
    labelled_isomorphic,
    neighborhood,
    project_ball,
    sphere_sizes,
    tree_like_radius,
    vertex_ball,
)


def edge_at(g, vertex, slot):
    return (vertex, int(g.targets[vertex][slot]))


def test_neighborhood_sizes():
    g = cayley_bank(19)

    # 1. hops=0 keeps just the edge
    ball = neighborhood(g, edge_at(g, 0, 0), 0)
    assert ball.num_vertices == 2
    assert ball.words == [(), (0,)]

    # 2. tree-like: 17 around one endpoint plus 9 beyond the other
    assert neighborhood(g, edge_at(g, 0, 0), 2).num_vertices == 26

    # 3. the diameter of G_3 is 4, so 4 hops cover everything
    g3 = cayley_bank(3)
    assert neighborhood(g3, edge_at(g3, 0, 1), 4).num_vertices == 24


def test_neighborhood_errors():
    g = cayley_bank(5)
    with pytest.raises(GraphError):
        neighborhood(g, (0, 0), 1)
    with pytest.raises(ValueError):
        neighborhood(g, edge_at(g, 0, 0), -1)
    with pytest.raises(GraphError):
        vertex_ball(g, g.num_nodes, 1)


def test_neighborhoods_agree_past_faithful_modulus():
    assert faithful_modulus(2) == 19
    for slot in (GeneratorSlot.S1, GeneratorSlot.S2):
        reference = infinite_neighborhood(slot, 2)
        for n in (19, 23, 29):
            g = cayley_bank(n)
            for vertex in (0, 7, g.num_nodes - 1):
                ball = neighborhood(g, edge_at(g, vertex, slot), 2)
                assert labelled_isomorphic(ball, reference), (n, vertex, slot)


def test_small_modulus_is_not_tree_like():
    g3, g19 = cayley_bank(3), cayley_bank(19)
    assert not labelled_isomorphic(
        neighborhood(g3, edge_at(g3, 0, 0), 2), neighborhood(g19, edge_at(g19, 0, 0), 2)
    )
    # different edge labels never match
    assert not labelled_isomorphic(
        neighborhood(g19, edge_at(g19, 0, 0), 2), neighborhood(g19, edge_at(g19, 0, 1), 2)
    )


def test_alphabet_mismatch():
    ball = infinite_ball(1)
    with pytest.raises(ValueError):
        labelled_isomorphic(ball, ball.copy(update={"alphabet": 2}))


def test_tree_like_radius():
    assert tree_like_radius(19) == 3
    assert tree_like_radius(2) == 0
    with pytest.raises(ValueError):
        tree_like_radius(1)

    assert tree_like_radius(23) == 3
    for n in (19, 23):
        g = cayley_bank(n)
        for r in range(tree_like_radius(n) + 1):
            assert labelled_isomorphic(vertex_ball(g, 0, r), infinite_ball(r))
            assert labelled_isomorphic(vertex_ball(g, 100, r), infinite_ball(r))


def test_infinite_ball():
    assert infinite_ball(0).num_vertices == 1
    assert infinite_ball(1).num_vertices == 5
    assert infinite_ball(2).num_vertices == 17
    assert infinite_ball(1).vertices[1:] == [(1, 1, 0, 1), (1, 0, 1, 1), (1, -1, 0, 1), (1, 0, -1, 1)]

    # s1 s2^-1 s1 = s2^-1 s1 s2^-1 merges paths from radius 3 on
    sizes = sphere_sizes(infinite_ball(4))
    assert sizes == [1, 4, 12, 30, 68]
    for r, size in enumerate(sizes[1:], start=1):
        assert size <= 4 * 3 ** (r - 1)


def test_finite_spheres_never_exceed_tree_growth():
    for n in (3, 5, 7, 19):
        sizes = sphere_sizes(vertex_ball(cayley_bank(n), 0, 5))
        for r, size in enumerate(sizes[1:], start=1):
            assert size <= 4 * 3 ** (r - 1)


def test_radius_guard():
    with pytest.raises(GraphTooLargeError):
        infinite_ball(13)
    with pytest.raises(GraphTooLargeError):
        infinite_neighborhood(0, 12)
    with pytest.raises(ValueError):
        infinite_ball(-1)


def test_project_ball():
    g = cayley_bank(19)
    ball = infinite_ball(tree_like_radius(19))
    images = project_ball(ball, g)
    assert images is not None
    assert images[0] == 0
    assert len(set(images)) == ball.num_vertices

    # s1^3 = I mod 3 folds the radius-2 ball
    assert project_ball(infinite_ball(2), cayley_bank(3)) is None


def test_divergence_radius():
    # balls agree up to the tree-like radius; s1^(k+1) = s1^-k mod 2k+1 forces a collision by k+1
    for n in (19, 23):
        bound = (n + 1) // 2
        r = divergence_radius(cayley_bank(n), max_radius=bound)
        assert r is not None
        assert tree_like_radius(n) < r <= bound

    assert divergence_radius(cayley_bank(3), max_radius=4) == 2
