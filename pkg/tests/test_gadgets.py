import random
from itertools import combinations, product

import networkx as nx
import pytest

from listchoose.choosability import (
    available_colors,
    enumerate_assignments,
    is_critical,
    is_fk_choosable,
    recognize_2_choosable,
)
from listchoose.gadgets import (
    GadgetWithRoles,
    attach_H_everywhere,
    bipartite_ch_reduction,
    bipartite_critical_gadget,
    c6_preext_reduction,
    candidate_148,
    compose_ff,
    forall_variable_gadget,
    gadget_G,
    gadget_G3,
    gadget_H,
    hypergraph_reduction,
    infeasible_from_2coloring,
    is_two_colorable,
    listcol_reduction_34,
    pad_subgrid_to_grid,
    path_transmitter,
)
from listchoose.graph import Graph, chocolate, complete, complete_bipartite, cycle, grid, path
from listchoose.listcolor import (
    ListAssignment,
    count_colorings,
    is_feasible,
    is_proper_list_coloring,
    solve,
)
from listchoose.structure import bipartition, compute_core, find_odd_hole

from _oracles import brute_choosable, brute_feasible, to_nx


# -- variable gadget ---------------------------------------------------------


def test_forall_gadget_shape():
    gad = forall_variable_gadget()
    g = gad.graph
    assert (g.n, g.m) == (6, 6)
    assert sorted(g.degree(v) for v in g.vertices).count(1) == 2
    core = compute_core(g).core
    assert nx.is_isomorphic(to_nx(core), nx.cycle_graph(4))
    assert recognize_2_choosable(g) and is_fk_choosable(g, 2, 4).choosable


def test_forall_fixture_is_first_assignment_forcing_u():
    gad = forall_variable_gadget()
    first = next(L for L in enumerate_assignments(gad.graph, gad.sizes, 3, symmetry=False)
                 if len(available_colors(gad.graph, L, "u")) == 1)
    assert first == gad.canonical_assignment


# -- transmitters ------------------------------------------------------------


def _forced_output(gad):
    L = gad.canonical_assignment
    return {c for c in L["y"] if is_feasible(gad.graph, L, {"x": 1, "y": c})}


@pytest.mark.parametrize("p,i,lists", [
    (2, 0, [{1, 2}, {1, 2}, {1, 2}]),
    (3, 0, [{1, 2}, {1, 2}, {2, 3}, {1, 3}]),
    (2, 1, [{1, 2}, {1, 3}, {3, 2}]),
])
def test_transmitter_examples(p, i, lists):
    gad = path_transmitter(p, i)
    L = gad.canonical_assignment
    assert [set(L[v]) for v in gad.graph.vertices] == lists
    assert _forced_output(gad) == {i + 1}


@pytest.mark.parametrize("p", range(2, 8))
@pytest.mark.parametrize("i", range(3))
def test_every_transmitter_forces_its_target(p, i):
    gad = path_transmitter(p, i)
    assert gad.graph.n == p + 1
    assert _forced_output(gad) == {i + 1}
    assert is_feasible(gad.graph, gad.canonical_assignment, {"x": 1})


def test_transmitter_rejects_bad_parameters():
    with pytest.raises(ValueError):
        path_transmitter(1, 0)
    with pytest.raises(ValueError):
        path_transmitter(3, 3)


# -- composition -------------------------------------------------------------


def test_compose_star_onto_single_vertex():
    star = bipartite_critical_gadget(2)
    g, f = compose_ff(Graph(["v"]), {"v": 1}, "v", star, 3)
    assert g.n == 4
    assert f["v"] == 2
    assert sorted(f.values()) == [2, 2, 2, 2]
    assert is_fk_choosable(Graph(["v"]), {"v": 1}, 3).choosable
    assert is_fk_choosable(g, f, 3).choosable


def _small_graphs(max_n):
    for n in range(1, max_n + 1):
        verts = [f"v{i}" for i in range(n)]
        pairs = list(combinations(verts, 2))
        for mask in range(1 << len(pairs)):
            yield Graph(verts, [e for j, e in enumerate(pairs) if mask >> j & 1])


def test_compose_preserves_choosability_for_the_star_gadget():
    star = bipartite_critical_gadget(2)
    checked = 0
    for g in _small_graphs(3):
        for sizes in product((1, 2), repeat=g.n):
            f = dict(zip(g.vertices, sizes))
            for v0 in g.vertices:
                if f[v0] >= 2:
                    continue
                g2, f2 = compose_ff(g, f, v0, star, 3)
                assert is_fk_choosable(g, f, 3).choosable == is_fk_choosable(g2, f2, 3).choosable
                checked += 1
    assert checked > 50


def test_compose_renames_clashing_vertices_and_checks_inputs():
    star = bipartite_critical_gadget(2)
    g, f = compose_ff(complete_bipartite(1, 2), {"b0": 1, "w0": 1, "w1": 1}, "b0", star, 3)
    assert g.n == 6 and all(v in g for v in ("H.b0", "H.w0", "H.w1"))
    with pytest.raises(ValueError):
        compose_ff(Graph(["v"]), {"v": 2}, "v", star, 2)
    with pytest.raises(ValueError):
        compose_ff(Graph(["v"]), {"v": 1}, "u", star, 3)


def test_compose_onto_a_two_list_grid_vertex_lifts_its_size():
    g = chocolate()
    f = {v: 2 for v in g.vertices}
    g2, f2 = compose_ff(g, f, "g1_1", gadget_H(), 4)
    assert f2["g1_1"] == 3 and g2.n == 13
    assert all(f2[s] == 3 for s in ("X", "Y", "Z"))


# -- two-diamond gadget ------------------------------------------------------


def test_h_gadget_shape_and_fixture():
    gad = gadget_H()
    assert (gad.graph.n, gad.graph.m) == (7, 10)
    rep = is_critical(gad.graph, gad.sizes, 4, ["X", "Y", "Z"])
    assert rep.is_critical
    assert rep.witness == gad.canonical_assignment
    assert not is_feasible(gad.graph, gad.canonical_assignment)


def test_h_gadget_extends_when_x_y_z_share_a_color():
    g = gadget_H().graph
    middles = ["a1", "a2", "b1", "b2"]
    triples = list(combinations(range(1, 5), 3))
    for c in range(1, 5):
        for pick in product(triples, repeat=4):
            lists = {v: set(range(1, 5)) for v in "XYZ"} | dict(zip(middles, pick))
            L = ListAssignment(4, lists)
            assert is_feasible(g, L, {"X": c, "Y": c, "Z": c})


def test_attach_everywhere_on_chocolate():
    g, sizes, cert = attach_H_everywhere(chocolate(), chocolate().vertices)
    assert g.n == 48
    assert set(sizes.values()) == {3}
    assert is_proper_list_coloring(g, None, cert) and set(cert.values()) == {1, 2, 3}
    assert find_odd_hole(g, max_len=9) is None
    assert g.is_connected()


def test_attach_everywhere_requires_vertices():
    with pytest.raises(ValueError):
        attach_H_everywhere(path(2), [])


@pytest.mark.parametrize("g,two,expected", [
    (Graph(["v"]), ["v"], True),
    (path(2), ["p0"], True),
    (path(3), ["p1"], True),
    (complete(3), ["k0"], True),
    (complete(4), ["k0"], False),
])
def test_attaching_gadgets_keeps_the_verdict(g, two, expected):
    f = {v: 2 if v in two else 3 for v in g.vertices}
    assert is_fk_choosable(g, f, 4).choosable is expected
    big, sizes, _ = attach_H_everywhere(g, two)
    assert is_fk_choosable(big, sizes, 4).choosable is expected


# -- five-cycle gadgets ------------------------------------------------------


def test_g3_shape():
    gad = gadget_G3()
    g = gad.graph
    assert (g.n, g.m) == (18, 29)
    assert not g.has_triangle()
    assert nx.check_planarity(to_nx(g))[0]
    assert {v for v, s in gad.sizes.items() if s == 2} == {"C", "E", "F", "H"}
    assert sum(nx.triangles(to_nx(g)).values()) == 0


def test_g_shape_and_candidate():
    gad = gadget_G()
    g = gad.graph
    assert g.n == 49
    assert g.degree("A") == 12
    assert len(gad.roles["S"]) == 9
    assert not g.has_triangle()
    big, hub = candidate_148()
    assert big.n == 148 and big.degree(hub) == 27
    assert not big.has_triangle()
    assert sum(nx.triangles(to_nx(big)).values()) == 0


def test_g_rejects_bad_gluing():
    with pytest.raises(ValueError):
        gadget_G(("A", "E"))
    with pytest.raises(ValueError):
        gadget_G(("C", "D"))


# -- bipartite critical gadget -----------------------------------------------


def test_bipartite_gadget_ell_2():
    gad = bipartite_critical_gadget(2)
    assert nx.is_isomorphic(to_nx(gad.graph), nx.complete_bipartite_graph(1, 2))
    L = gad.canonical_assignment
    assert [set(L[v]) for v in gad.graph.vertices] == [{1, 2}, {1}, {2}]
    assert solve(gad.graph, L) is None
    assert is_critical(gad.graph, gad.sizes, 3, gad.roles["W"]).is_critical


def test_bipartite_gadget_ell_3():
    gad = bipartite_critical_gadget(3)
    assert (len(gad.roles["B"]), len(gad.roles["W"])) == (4, 6)
    assert gad.palette == 5
    assert solve(gad.graph, gad.canonical_assignment) is None


def test_bipartite_ch_reduction():
    g = bipartite_ch_reduction(Graph(["v"]), {"v": 2}, 3)
    assert g.n == 11 and bipartition(g) is not None
    g = bipartite_ch_reduction(path(2), {"p0": 2, "p1": 3}, 4)
    assert bipartition(g) is not None
    h = bipartite_critical_gadget(4).graph.n
    assert g.n == 2 + 2 * h + h
    with pytest.raises(ValueError):
        bipartite_ch_reduction(cycle(3), {f"c{i}": 2 for i in range(3)}, 3)


# -- hypergraph reduction ----------------------------------------------------


def test_hypergraph_reduction_example():
    X, F = ["x1", "x2", "x3"], [["x1", "x2"], ["x2", "x3"]]
    inst = hypergraph_reduction(X, F)
    g = inst.graph
    assert (g.n, g.m) == (10, 15)
    assert len(inst.roles["VS"]) == 2
    colors = {count_colorings(g, ListAssignment.full(g, k)) > 0 for k in (2, 3)}
    assert colors == {False, True}
    col = is_two_colorable(X, F)
    bad = infeasible_from_2coloring(inst, col)
    assert solve(g, bad) is None
    assert all(len(bad[v]) == inst.sizes[v] for v in g.vertices)


def test_infeasible_lists_need_a_valid_coloring():
    inst = hypergraph_reduction(["x1", "x2"], [["x1", "x2"], ["x2"]])
    with pytest.raises(ValueError):
        infeasible_from_2coloring(inst, {"x1": 0, "x2": 0})


def _hypergraphs(max_x):
    for nx_ in range(1, max_x + 1):
        X = [f"x{i}" for i in range(1, nx_ + 1)]
        edges = [e for r in (1, 2, 3) for e in combinations(X, r)]
        for e1, e2 in combinations(edges, 2):
            yield X, [list(e1), list(e2)]


def test_two_colorable_iff_not_choosable():
    n = 0
    for X, F in _hypergraphs(4):
        inst = hypergraph_reduction(X, F)
        verdict = is_fk_choosable(inst.graph, inst.sizes, inst.palette)
        assert (is_two_colorable(X, F) is not None) == (not verdict.choosable), (X, F)
        n += 1
    assert n > 100


def test_non_two_colorable_instance_is_choosable_by_brute_force():
    X, F = ["x1", "x2", "x3"], [["x1"], ["x2", "x3"]]
    assert is_two_colorable(X, F) is None
    inst = hypergraph_reduction(X, F)
    ok, _ = brute_choosable(inst.graph, inst.sizes, inst.palette)
    assert ok


# -- grid padding and pre-extension ------------------------------------------


def test_pad_identity_on_chocolate():
    s = chocolate()
    g, f = pad_subgrid_to_grid(s, {v: 2 for v in s.vertices})
    assert g == s and set(f.values()) == {2}


def test_pad_three_cells():
    s = grid(3, 3).subgraph(["g1_1", "g2_2", "g3_3"])
    g, f = pad_subgrid_to_grid(s, {v: 2 for v in s.vertices})
    assert (g.n, g.m) == (9, 12)
    assert sorted(f.values()) == [2] * 3 + [5] * 6


def test_pad_rejects_plain_graphs_and_non_induced_input():
    with pytest.raises(ValueError):
        pad_subgrid_to_grid(path(2), {"p0": 2, "p1": 2})
    s = grid(2, 2)
    partial = type(s)(2, 2, s.vertices, [("g1_1", "g1_2")], s.coords)
    with pytest.raises(ValueError):
        pad_subgrid_to_grid(partial, {v: 2 for v in s.vertices})


def test_c6_preext_on_isolated_vertices():
    gad = c6_preext_reduction(Graph(["v1", "v2", "v3"]), "v1", "v2", "v3")
    assert nx.is_isomorphic(to_nx(gad.graph), nx.cycle_graph(6))
    assert bipartition(gad.graph) is not None


def test_c6_preext_forces_three_colors():
    g = Graph(["v1", "a", "v2", "v3", "b"], [("v1", "a"), ("a", "v2"), ("v3", "b")])
    gad = c6_preext_reduction(g, "v1", "v2", "v3")
    L = gad.canonical_assignment
    assert bipartition(gad.graph) is not None
    found = 0
    verts = gad.graph.vertices
    for cols in product(*(sorted(L[v]) for v in verts)):
        c = dict(zip(verts, cols))
        if is_proper_list_coloring(gad.graph, L, c):
            found += 1
            assert len({c["v1"], c["v2"], c["v3"]}) == 3
    assert found > 0
    # a common neighbor of all three has no color left
    choc = c6_preext_reduction(grid(2, 3), "g1_1", "g2_2", "g1_3")
    assert solve(choc.graph, choc.canonical_assignment) is None
    with pytest.raises(ValueError):
        c6_preext_reduction(grid(2, 3), "g1_1", "g1_2", "g1_3")


# -- [3,4] list coloring reduction -------------------------------------------


def test_listcol34_on_chocolate():
    g = chocolate()
    lists = {v: {1, 2, 3} for v in g.vertices} | {"g1_1": {1, 2}}
    big, L, cert = listcol_reduction_34(g, ListAssignment(4, lists))
    assert big.n == 13
    assert L["g1_1"] == {1, 2, 3}
    assert all(len(L[v]) == 3 for v in big.vertices)
    assert is_proper_list_coloring(big, None, cert) and max(cert.values()) == 3


def test_listcol34_gadget_blocks_the_added_color():
    rng = random.Random(31)
    for _ in range(30):
        two = set(rng.sample(range(1, 5), 2))
        big, L, _ = listcol_reduction_34(Graph(["v"]), ListAssignment(4, {"v": two}))
        added = next(iter(L["v"] - two))
        sub = L.restricted(big.vertices)
        pinned = ListAssignment(4, dict(sub.lists) | {"v": {added}})
        assert count_colorings(big, pinned) == 0
        for c in two:
            assert is_feasible(big, L, {"v": c})


def test_listcol34_preserves_feasibility():
    rng = random.Random(32)
    graphs = [path(2), path(3), cycle(4), complete(3), complete_bipartite(1, 3)]
    for _ in range(200):
        g = rng.choice(graphs)
        lists = {v: set(rng.sample(range(1, 5), rng.choice((2, 3)))) for v in g.vertices}
        L = ListAssignment(4, lists)
        big, L2, _ = listcol_reduction_34(g, L)
        assert brute_feasible(g, L.lists) == is_feasible(big, L2)


def test_listcol34_rejects_bad_lists():
    with pytest.raises(ValueError):
        listcol_reduction_34(path(2), ListAssignment(4, {"p0": {1}, "p1": {1, 2}}))
    with pytest.raises(ValueError):
        listcol_reduction_34(path(2), ListAssignment(5, {"p0": {1, 2}, "p1": {1, 2}}))


# -- container validation ----------------------------------------------------


def test_gadget_container_validation():
    g = path(2)
    with pytest.raises(ValueError):
        GadgetWithRoles(g, {"x": "zz"}, {"p0": 1, "p1": 1}, 2)
    with pytest.raises(ValueError):
        GadgetWithRoles(g, {}, {"p0": 1}, 2)
    with pytest.raises(ValueError):
        GadgetWithRoles(g, {}, {"p0": 1, "p1": 1}, 2,
                        ListAssignment(2, {"p0": {1, 2}, "p1": {1}}))
    doc = forall_variable_gadget().to_json()
    assert doc["palette"] == 3 and doc["metadata"]["color_shift"] == 1
