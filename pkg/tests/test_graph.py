import json

import networkx as nx
import pytest

from listchoose.graph import (
    Graph,
    GridGraph,
    build_named,
    chocolate,
    complete_bipartite,
    cycle,
    diamond,
    gamma,
    graph_from_json,
    graph_to_json,
    grid,
    k11p,
    parse_descriptor,
    path,
    theta,
    to_dot,
)

from _oracles import to_nx


def test_rejects_loops_duplicates_and_unknown_endpoints():
    with pytest.raises(ValueError):
        Graph(["a", "a"])
    with pytest.raises(ValueError):
        Graph(["a"], [("a", "a")])
    with pytest.raises(ValueError):
        Graph(["a"], [("a", "b")])


def test_parallel_edges_collapse_and_order_is_kept():
    g = Graph(["b", "a"], [("a", "b"), ("b", "a")])
    assert g.m == 1
    assert g.vertices == ("b", "a")
    assert g.sorted_edges == (("b", "a"),)


def test_theta_222_is_k23():
    assert nx.is_isomorphic(to_nx(theta(2, 2, 2)), to_nx(complete_bipartite(2, 3)))


@pytest.mark.parametrize("lengths", [(2, 2, 2), (1, 3, 5), (2, 2, 4), (3, 4, 5)])
def test_theta3_vertex_count(lengths):
    assert theta(*lengths).n == sum(lengths) - 1


def test_theta4_vertex_count_and_one_short_path_allowed():
    assert theta(2, 2, 2, 4).n == 2 + 1 + 1 + 1 + 3
    assert theta(1, 2, 2, 2).m == 7


def test_theta_rejects_two_length_one_paths():
    with pytest.raises(ValueError):
        theta(1, 1, 3)


@pytest.mark.parametrize("p,q,r", [(4, 4, 0), (3, 5, 2), (4, 6, 1)])
def test_gamma_vertex_count(p, q, r):
    g = gamma(p, q, r)
    assert g.n == p + q + r - 1
    assert g.m == p + q + r


def test_gamma_440_is_two_c4_sharing_a_vertex():
    g = gamma(4, 4, 0)
    assert g.n == 7
    degs = sorted(g.degree(v) for v in g.vertices)
    assert degs == [2] * 6 + [4]


def test_chocolate_is_the_2x3_grid():
    c = chocolate()
    assert (c.n, c.m) == (6, 7)
    assert isinstance(c, GridGraph)
    assert nx.is_isomorphic(to_nx(c), nx.grid_2d_graph(2, 3))


def test_grid_edges_are_unit_steps():
    g = grid(3, 4)
    for a, b in g.edges:
        (i, j), (k, l) = g.coords[a], g.coords[b]
        assert abs(i - k) + abs(j - l) == 1
    assert g.m == 3 * 3 + 2 * 4


def test_subgrid_keeps_parent_coordinates():
    g = grid(3, 3)
    s = g.subgraph(["g2_2", "g2_3", "g3_3"])
    assert isinstance(s, GridGraph)
    assert s.coords == {"g2_2": (2, 2), "g2_3": (2, 3), "g3_3": (3, 3)}


def test_diamond_and_k11p():
    d = diamond()
    assert (d.n, d.m) == (4, 5)
    assert not d.has_edge("v1", "v4")
    k = k11p(3)
    assert nx.is_isomorphic(to_nx(k), nx.complete_multipartite_graph(1, 1, 3))


@pytest.mark.parametrize("text,n,m", [
    ("cycle:5", 5, 5), ("path:4", 4, 3), ("complete:4", 4, 6),
    ("completeBipartite:2,5", 7, 10), ("completeTripartite:1,1,2", 4, 5),
    ("theta:2,2,4", 7, 8), ("grid:3,5", 15, 22), ("chocolate", 6, 7), ("diamond", 4, 5),
    ("gamma:3,3,1", 6, 7), ("k11p:4", 6, 9),
])
def test_descriptors(text, n, m):
    g = parse_descriptor(text)
    assert (g.n, g.m) == (n, m)


@pytest.mark.parametrize("bad", ["cycle:2", "nosuch", "theta:1,1,2", "grid:3", "cycle:x"])
def test_bad_descriptors(bad):
    with pytest.raises(ValueError):
        parse_descriptor(bad)


def test_build_named_aliases():
    assert build_named("C", 6) == cycle(6)
    assert build_named("theta", 2, 2, 2, 4) == theta(2, 2, 2, 4)


def test_json_round_trip_plain_and_grid():
    for g in (cycle(5), chocolate(), grid(2, 2).subgraph(["g1_1", "g1_2"])):
        doc = json.loads(json.dumps(graph_to_json(g)))
        back = graph_from_json(doc)
        assert back == g
        assert type(back) is type(g)


def test_json_requires_vertices():
    with pytest.raises(ValueError):
        graph_from_json({"edges": []})


def test_dot_export_mentions_every_edge():
    g = path(3)
    dot = to_dot(g, colors={"p0": 1})
    assert dot.startswith('graph "G" {')
    assert '"p0" -- "p1";' in dot and '"p1" -- "p2";' in dot
    assert 'label="p0:1"' in dot


def test_union_rejects_clashes_and_components_are_ordered():
    g = cycle(3).union(path(2))
    assert g.components() == [("c0", "c1", "c2"), ("p0", "p1")]
    with pytest.raises(ValueError):
        g.union(path(1))
