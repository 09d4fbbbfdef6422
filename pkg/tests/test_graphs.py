import numpy as np
import pytest

from bellmark.errors import DisconnectedGraphError, InvalidInputError
from bellmark.graphs import (
    ConnectivityGraph,
    connected_subset,
    induced_subgraph,
    local_complement,
    longest_simple_path,
    spanning_tree,
)
from bellmark.devices import load_preset

from oracles import all_simple_paths_longest, random_connected_graph


def test_graph_normalizes_and_validates():
    g = ConnectivityGraph.from_edges(3, [(2, 1), (1, 2), (0, 1)])
    assert g.edges == frozenset({(1, 2), (0, 1)})
    with pytest.raises(InvalidInputError):
        ConnectivityGraph.from_edges(3, [(0, 0)])
    with pytest.raises(InvalidInputError):
        ConnectivityGraph.from_edges(3, [(0, 3)])


def test_neighbors_symmetric():
    g = ConnectivityGraph.from_edges(4, [(0, 2), (1, 2)])
    assert g.neighbors(2) == (0, 1)
    assert g.neighbors(0) == (2,)
    assert g.degree(3) == 0


def test_local_complement_path_to_triangle():
    path = ConnectivityGraph.path(3)
    tri = local_complement(path, 1)
    assert tri.edges == frozenset({(0, 1), (1, 2), (0, 2)})
    # involution
    assert local_complement(tri, 1) == path


def test_local_complement_star_to_complete():
    star = ConnectivityGraph.star(5, center=0)
    assert local_complement(star, 0) == ConnectivityGraph.complete(5)


def test_local_complement_involution_random():
    rng = np.random.default_rng(42)
    for _ in range(100):
        n = int(rng.integers(2, 13))
        g = random_connected_graph(rng, n, 0.35)
        v = int(rng.integers(n))
        assert local_complement(local_complement(g, v), v) == g


def test_local_complement_preserves_far_edges():
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = int(rng.integers(3, 12))
        g = random_connected_graph(rng, n)
        v = int(rng.integers(n))
        nbr = set(g.neighbors(v))
        changed = g.edges ^ local_complement(g, v).edges
        assert all(a in nbr and b in nbr for a, b in changed)


def test_spanning_tree_tree_input_unchanged():
    tree = ConnectivityGraph.from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    assert spanning_tree(tree).edges == tree.edges


def test_spanning_tree_of_k4():
    t = spanning_tree(ConnectivityGraph.complete(4))
    assert len(t.edges) == 3
    assert t.is_connected()


def test_spanning_tree_properties_random():
    rng = np.random.default_rng(3)
    for _ in range(50):
        g = random_connected_graph(rng, int(rng.integers(2, 14)))
        t = spanning_tree(g)
        assert len(t.edges) == g.n_vertices - 1
        assert t.is_connected()
        assert t.edges <= g.edges


def test_spanning_tree_eagle_127():
    g = load_preset("eagle-127").graph
    t = spanning_tree(g)
    assert len(t.edges) == 126
    assert t.is_connected()
    assert t.edges <= g.edges


def test_spanning_tree_rejects_disconnected():
    with pytest.raises(DisconnectedGraphError):
        spanning_tree(ConnectivityGraph(4, frozenset({(0, 1)})))


def _assert_valid_path(g, path):
    assert len(set(path)) == len(path)
    for a, b in zip(path, path[1:]):
        assert g.has_edge(a, b)


def test_longest_path_star5():
    g = load_preset("star-5").graph
    res = longest_simple_path(g, length_multiple=3)
    assert res.exact
    assert len(res.path) == 3
    _assert_valid_path(g, res.path)
    # leaf-center-leaf: the middle vertex is the hub
    assert g.degree(res.path[1]) == 4


def test_longest_path_k20():
    g = load_preset("ion-trap-20").graph
    res = longest_simple_path(g, length_multiple=3)
    assert res.exact
    assert len(res.path) == 18
    _assert_valid_path(g, res.path)


def test_longest_path_falcon7():
    g = load_preset("falcon-7").graph
    raw = longest_simple_path(g, length_multiple=1)
    assert raw.exact
    assert len(raw.path) == 5
    res = longest_simple_path(g, length_multiple=3)
    assert len(res.path) == 3
    _assert_valid_path(g, res.path)


def test_longest_path_eagle127():
    g = load_preset("eagle-127").graph
    res = longest_simple_path(g, length_multiple=3, budget=100_000)
    assert not res.exact  # search space is far beyond the budget
    assert len(res.path) >= 105
    _assert_valid_path(g, res.path)


def test_longest_path_empty_graph():
    res = longest_simple_path(ConnectivityGraph(0))
    assert res.path == ()
    assert res.exact


def test_longest_path_matches_bruteforce():
    rng = np.random.default_rng(11)
    for _ in range(30):
        n = int(rng.integers(2, 11))
        g = random_connected_graph(rng, n, 0.3)
        res = longest_simple_path(g)
        assert res.exact
        assert len(res.path) == all_simple_paths_longest(g)
        _assert_valid_path(g, res.path)


def test_longest_path_multiple_of_three_truncation():
    rng = np.random.default_rng(12)
    for _ in range(20):
        g = random_connected_graph(rng, int(rng.integers(3, 11)), 0.3)
        full = longest_simple_path(g)
        mod3 = longest_simple_path(g, length_multiple=3)
        assert len(mod3.path) == (len(full.path) // 3) * 3
        assert mod3.path == full.path[: len(mod3.path)]


def test_connected_subset_and_induced():
    g = load_preset("falcon-7").graph
    vs = connected_subset(g, 4)
    assert len(vs) == 4
    sub = induced_subgraph(g, vs)
    assert sub.is_connected()


def test_path_order():
    g = ConnectivityGraph.from_edges(4, [(2, 0), (0, 3), (3, 1)])
    assert g.path_order() == (1, 3, 0, 2)
