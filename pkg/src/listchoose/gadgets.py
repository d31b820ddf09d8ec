"""Reduction gadgets with labeled roles.

Constructions that use colors 0..m or 0/1/2 internally are shifted to the
1-based palette here: color ``c`` becomes ``c + 1``. Every gadget records
the shift in ``metadata["color_shift"]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Mapping, Sequence

from .graph import Graph, GridGraph, complete_bipartite, grid_edges, grid_name
from .listcolor import ListAssignment
from .structure import bipartition

__all__ = [
    "GadgetWithRoles",
    "forall_variable_gadget",
    "path_transmitter",
    "compose_ff",
    "gadget_H",
    "attach_H_everywhere",
    "gadget_G3",
    "gadget_G",
    "candidate_148",
    "bipartite_critical_gadget",
    "bipartite_ch_reduction",
    "hypergraph_reduction",
    "infeasible_from_2coloring",
    "is_two_colorable",
    "pad_subgrid_to_grid",
    "c6_preext_reduction",
    "listcol_reduction_34",
]


@dataclass
class GadgetWithRoles:
    graph: Graph
    roles: dict[str, Any]
    sizes: dict[str, int]
    palette: int
    canonical_assignment: ListAssignment | None = None
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        for name, r in self.roles.items():
            members = [r] if isinstance(r, str) else list(r)
            bad = [v for v in members if v not in self.graph]
            if bad:
                raise ValueError(f"role {name} names unknown vertex {bad[0]}")
        if set(self.sizes) != set(self.graph.vertices):
            raise ValueError("sizes must cover exactly the graph's vertices")
        L = self.canonical_assignment
        if L is not None:
            if L.palette != self.palette:
                raise ValueError("canonical assignment uses a different palette")
            L.check_covers(self.graph)
            for v in self.graph.vertices:
                if len(L[v]) != self.sizes[v]:
                    raise ValueError(f"canonical list of {v} has the wrong size")

    def to_json(self) -> dict:
        from .graph import graph_to_json
        roles = {k: (v if isinstance(v, str) else list(v)) for k, v in self.roles.items()}
        return {
            "graph": graph_to_json(self.graph),
            "roles": roles,
            "sizes": dict(self.sizes),
            "palette": self.palette,
            "canonical_assignment": None if self.canonical_assignment is None
            else self.canonical_assignment.to_json(),
            "metadata": {k: v for k, v in self.metadata.items()
                         if isinstance(v, (int, str, float, bool, list))},
        }


def _shift(colors: Iterable[int]) -> list[int]:
    return [c + 1 for c in colors]


# -- variable gadget and transmitters ----------------------------------------


# first assignment (no symmetry) leaving u a single available color
_FORALL_LISTS = {"u": (1, 2), "ubar": (1, 2), "u1": (1, 2), "u2": (1, 2),
                 "u3": (1, 3), "u4": (2, 3)}


def forall_variable_gadget() -> GadgetWithRoles:
    """4-cycle u1 u2 u3 u4 with pendant literal vertices u (on u1) and ubar
    (on u3). 2-lists from a 3-palette.

    The canonical assignment is the first one, in canonical order, under
    which ``u`` has a single available color (found by search, frozen here).
    """
    vs = ["u", "ubar", "u1", "u2", "u3", "u4"]
    es = [("u1", "u2"), ("u2", "u3"), ("u3", "u4"), ("u4", "u1"), ("u", "u1"), ("ubar", "u3")]
    g = Graph(vs, es)
    sizes = {v: 2 for v in vs}
    canon = ListAssignment(3, _FORALL_LISTS)
    return GadgetWithRoles(g, {"u": "u", "ubar": "ubar", "cycle": ("u1", "u2", "u3", "u4")},
                           sizes, 3, canon, {"color_shift": 1})


def path_transmitter(p: int, i: int) -> GadgetWithRoles:
    """Path of length ``p`` from ``x`` to ``y`` with 2-lists such that coloring
    ``x`` with 1 forces ``y`` to take ``i + 1`` (palette {1,2,3})."""
    if p < 2:
        raise ValueError("path length must be at least 2")
    if i not in (0, 1, 2):
        raise ValueError("target color index must be 0, 1 or 2")
    if i == 0 and p % 2 == 0:
        pattern = [(0, 1)] * (p + 1)
    elif i == 0:
        pattern = [(0, 1)] * (p - 1) + [(1, 2), (0, 2)]
    else:
        j = 3 - i
        last = (0, i) if p % 2 else (j, i)
        pattern = [(0, 1)] + [(0, j)] * (p - 1) + [last]
    names = ["x"] + [f"t{t}" for t in range(1, p)] + ["y"]
    g = Graph(names, list(zip(names, names[1:])))
    L = ListAssignment(3, {v: _shift(pat) for v, pat in zip(names, pattern)})
    return GadgetWithRoles(g, {"x": "x", "y": "y", "I": "x", "O": "y"},
                           {v: 2 for v in names}, 3, L,
                           {"color_shift": 1, "target_color": i + 1, "length": p})


# -- composition -------------------------------------------------------------


def compose_ff(G: Graph, f: Mapping[str, int], v0: str, H: GadgetWithRoles,
               k: int, prefix: str = "H.") -> tuple[Graph, dict[str, int]]:
    """Disjoint union of G and H with every vertex of H's role S joined to
    ``v0``; sizes go up by one on S and at ``v0``."""
    if v0 not in G:
        raise ValueError(f"vertex {v0!r} not in G")
    if f[v0] >= k:
        raise ValueError(f"f({v0}) = {f[v0]} leaves no room below palette {k}")
    if "S" not in H.roles:
        raise ValueError("H has no S role")
    h = H.graph
    rename = {v: v for v in h.vertices}
    if set(h.vertices) & set(G.vertices):
        used = set(G.vertices)
        p = prefix
        while any(p + v in used for v in h.vertices):
            p = "_" + p
        rename = {v: p + v for v in h.vertices}
        h = h.relabel(rename)
    s = [rename[v] for v in H.roles["S"]]
    g2 = G.union(h, [(v0, u) for u in s])
    f2 = {v: int(f[v]) for v in G.vertices}
    f2[v0] += 1
    for v in H.graph.vertices:
        f2[rename[v]] = H.sizes[v] + (1 if rename[v] in s else 0)
    return g2, f2


# -- the two-diamond gadget --------------------------------------------------

_H_VERTICES = ("X", "Y", "Z", "a1", "a2", "b1", "b2")
_H_EDGES = (("X", "a1"), ("X", "a2"), ("a1", "a2"), ("a1", "Y"), ("a2", "Y"),
            ("X", "b1"), ("X", "b2"), ("b1", "b2"), ("b1", "Z"), ("b2", "Z"))


_H_WITNESS = {"X": (1, 2), "Y": (1, 3), "Z": (2, 3), "a1": (1, 2, 3), "a2": (1, 2, 3),
              "b1": (1, 2, 3), "b2": (1, 2, 3)}


def _h_graph(prefix: str = "") -> Graph:
    return Graph([prefix + v for v in _H_VERTICES],
                 [(prefix + a, prefix + b) for a, b in _H_EDGES])


def gadget_H() -> GadgetWithRoles:
    """Two diamonds sharing one degree-2 vertex X; Y and Z are the other
    degree-2 vertices. Sizes 2 on {X,Y,Z} and 3 elsewhere, palette 4.

    The canonical assignment is the first infeasible one, in canonical order,
    whose lists on X, Y, Z together use at most three colors (found by
    search, frozen here).
    """
    g = _h_graph()
    sizes = {v: 2 if v in "XYZ" else 3 for v in _H_VERTICES}
    return GadgetWithRoles(g, {"X": "X", "Y": "Y", "Z": "Z", "S": ("X", "Y", "Z")},
                           sizes, 4, ListAssignment(4, _H_WITNESS), {"color_shift": 0})


def attach_H_everywhere(G: Graph, two_list_vertices: Iterable[str]
                        ) -> tuple[Graph, dict[str, int], dict[str, int] | None]:
    """Attach a copy of the two-diamond gadget to every listed vertex, its
    X, Y, Z joined to that vertex. Returns the graph, the uniform size 3, and
    a proper 3-coloring (None when G is not bipartite): G in colors 1 and 2,
    every X, Y, Z in 3, the diamond middles in 1 and 2."""
    two = [v for v in G.vertices if v in set(two_list_vertices)]
    if not two:
        raise ValueError("need at least one 2-list vertex")
    g = G
    for v in two:
        pre = f"{v}/"
        h = _h_graph(pre)
        g = g.union(h, [(v, pre + s) for s in "XYZ"])
    sizes = {v: 3 for v in g.vertices}
    parts = bipartition(G)
    cert = None
    if parts is not None:
        cert = {v: 1 for v in parts[0]}
        cert.update({v: 2 for v in parts[1]})
        for v in two:
            pre = f"{v}/"
            cert.update({pre + "X": 3, pre + "Y": 3, pre + "Z": 3,
                         pre + "a1": 1, pre + "a2": 2, pre + "b1": 1, pre + "b2": 2})
    return g, sizes, cert


# -- the C5 gadgets ----------------------------------------------------------

_G3_VERTICES = ("A", "B", "C", "D", "E", "F", "G", "H",
                "a", "b", "c", "d", "e", "a'", "b'", "f", "g", "h")


def _g3_edges() -> list[tuple[str, str]]:
    def cyc(vs):
        return list(zip(vs, vs[1:] + vs[:1]))

    c1 = ["A", "B", "C", "D", "E"]
    c2 = ["A", "B", "F", "G", "H"]
    c3 = ["a", "b", "c", "d", "e"]
    c4 = ["a'", "b'", "f", "g", "h"]
    edges = set(cyc(c1)) | set(cyc(c2)) | set(cyc(c3)) | set(cyc(c4))
    edges |= set(zip(c1, c3)) | set(zip(c2, c4))
    return sorted(edges)


def gadget_G3() -> GadgetWithRoles:
    """Two 5-cycles ABCDE and ABFGH sharing the edge AB, each matched to a
    further 5-cycle (abcde, a'b'fgh). Size 2 on C, E, F, H and 3 elsewhere."""
    g = Graph(_G3_VERTICES, _g3_edges())
    sizes = {v: 2 if v in ("C", "E", "F", "H") else 3 for v in _G3_VERTICES}
    return GadgetWithRoles(g, {"A": "A", "S": ("C", "E", "F", "H")}, sizes, 5,
                           None, {"color_shift": 0})


def gadget_G(glue: tuple[str, str] = ("E", "H")) -> GadgetWithRoles:
    """Three copies of the 18-vertex gadget sharing A, consecutive copies
    glued cyclically: ``glue[0]`` of copy i is identified with ``glue[1]`` of
    copy i+1. S is the set of size-2 vertices."""
    base = gadget_G3()
    src, dst = glue
    for v in glue:
        if v not in base.graph or v == "A":
            raise ValueError(f"cannot glue on vertex {v!r}")
    rename = []
    for i in range(3):
        rename.append({v: "A" if v == "A" else f"{v}{i + 1}" for v in base.graph.vertices})
    for i in range(3):
        rename[(i + 1) % 3][dst] = rename[i][src]
    verts: list[str] = []
    edges = set()
    sizes: dict[str, int] = {}
    for i in range(3):
        for v in base.graph.vertices:
            w = rename[i][v]
            if w not in sizes:
                verts.append(w)
            sizes[w] = min(sizes.get(w, 3), base.sizes[v])
        for a, b in base.graph.edges:
            edges.add(frozenset((rename[i][a], rename[i][b])))
    if any(len(e) < 2 for e in edges):
        raise ValueError("gluing creates a loop")
    g = Graph(verts, [tuple(e) for e in edges])
    if g.has_triangle():
        raise ValueError("gluing creates a triangle")
    s = tuple(v for v in verts if sizes[v] == 2)
    if len(s) != 9:
        raise ValueError(f"gluing gives |S| = {len(s)}, expected 9")
    return GadgetWithRoles(g, {"A": "A", "S": s}, sizes, 5, None,
                           {"color_shift": 0, "glue": list(glue)})


def candidate_148(glue: tuple[str, str] = ("E", "H")) -> tuple[Graph, str]:
    """Three copies of ``gadget_G`` plus one vertex joined to all 27 size-2
    vertices. Returns the graph and the name of the new vertex."""
    base = gadget_G(glue)
    g = Graph([], [])
    black = []
    for i in range(3):
        pre = f"G{i + 1}."
        g = g.union(base.graph.prefixed(pre))
        black.extend(pre + v for v in base.roles["S"])
    hub = "hub"
    g = g.union(Graph([hub]), [(hub, v) for v in black])
    return g, hub


# -- bipartite gadgets -------------------------------------------------------


def bipartite_critical_gadget(ell: int) -> GadgetWithRoles:
    """Complete bipartite graph with one B-vertex per ell-subset and one
    W-vertex per (ell-1)-subset of {1..2ell-2}; palette 2ell-1, S = W."""
    if ell < 2:
        raise ValueError("ell must be at least 2")
    base = list(range(1, 2 * ell - 1))
    bsets = list(combinations(base, ell))
    wsets = list(combinations(base, ell - 1))
    g = complete_bipartite(len(bsets), len(wsets))
    bs = [v for v in g.vertices if v.startswith("b")]
    ws = [v for v in g.vertices if v.startswith("w")]
    lists = dict(zip(bs, bsets)) | dict(zip(ws, wsets))
    sizes = {v: ell for v in bs} | {v: ell - 1 for v in ws}
    return GadgetWithRoles(g, {"B": tuple(bs), "W": tuple(ws), "S": tuple(ws)}, sizes,
                           2 * ell - 1, ListAssignment(2 * ell - 1, lists),
                           {"color_shift": 0, "ell": ell})


def bipartite_ch_reduction(G: Graph, f: Mapping[str, int], ell: int) -> Graph:
    """Raise every size to ``ell`` by attaching ``ell - f(v)`` critical
    bipartite gadgets at each vertex; the result is bipartite."""
    if ell < 3:
        raise ValueError("ell must be at least 3")
    if bipartition(G) is None:
        raise ValueError("G is not bipartite")
    bad = [v for v in G.vertices if f[v] not in (2, 3)]
    if bad:
        raise ValueError(f"size of {bad[0]} must be 2 or 3")
    H = bipartite_critical_gadget(ell)
    k = 2 * ell - 1
    g, sizes = G, {v: int(f[v]) for v in G.vertices}
    for v in G.vertices:
        for r in range(ell - f[v]):
            g, sizes = compose_ff(g, sizes, v, H, k, prefix=f"{v}/{r}/")
    return g


# -- hypergraph 2-coloring reduction ----------------------------------------


def hypergraph_reduction(X: Sequence[str], F: Sequence[Iterable[str]]) -> GadgetWithRoles:
    """Graph whose choosability (with the size profile below) fails exactly
    when the hypergraph (X, F) is 2-colorable.

    V0 = v0_0..v0_m is a clique, VF (one vertex per hyperedge) is a clique
    joined to v0_0, VX (one per element) and VS (one per pair {s,t} of
    {0..m} other than {0,1}) are stable and joined to v0_2..v0_m, and each
    hyperedge vertex is joined to its elements. Sizes: m-1 on VS, m on VX,
    m+1 elsewhere, palette m+1.
    """
    X = [str(x) for x in X]
    F = [tuple(str(x) for x in e) for e in F]
    m = len(F)
    if m < 2:
        raise ValueError("need at least two hyperedges")
    if len(set(X)) != len(X):
        raise ValueError("repeated hypergraph vertex")
    for e in F:
        if not e or len(e) > 3 or len(set(e)) != len(e):
            raise ValueError(f"hyperedge {e} must have 1 to 3 distinct elements")
        if not set(e) <= set(X):
            raise ValueError(f"hyperedge {e} uses an unknown element")
    v0 = [f"v0_{i}" for i in range(m + 1)]
    vf = [f"vF_{i + 1}" for i in range(m)]
    vx = [f"vX_{x}" for x in X]
    pairs = [p for p in combinations(range(m + 1), 2) if p != (0, 1)]
    vs = [f"vS_{s}{t}" if m < 10 else f"vS_{s}_{t}" for s, t in pairs]
    edges = list(combinations(v0, 2)) + list(combinations(vf, 2))
    edges += [(a, b) for a in v0[2:] for b in vx + vs]
    edges += [(v0[0], b) for b in vf]
    for i, e in enumerate(F):
        edges += [(vf[i], f"vX_{x}") for x in e]
    g = Graph(v0 + vf + vx + vs, edges)
    sizes = {v: m + 1 for v in v0 + vf} | {v: m for v in vx} | {v: m - 1 for v in vs}
    return GadgetWithRoles(
        g, {"V0": tuple(v0), "VF": tuple(vf), "VX": tuple(vx), "VS": tuple(vs)},
        sizes, m + 1, None,
        {"color_shift": 1, "X": X, "F": [list(e) for e in F],
         "pairs": {v: [s + 1, t + 1] for v, (s, t) in zip(vs, pairs)}})


def is_two_colorable(X: Sequence[str], F: Sequence[Iterable[str]]) -> dict[str, int] | None:
    """A 2-coloring (colors 0/1) of X leaving no hyperedge monochromatic,
    by brute force; the first in binary counting order."""
    X = list(X)
    edges = [set(e) for e in F]
    for bits in range(1 << len(X)):
        col = {x: bits >> i & 1 for i, x in enumerate(X)}
        if all(len({col[x] for x in e}) == 2 for e in edges):
            return col
    return None


def infeasible_from_2coloring(instance: GadgetWithRoles,
                              coloring: Mapping[str, int]) -> ListAssignment:
    """The infeasible list system built from a 2-coloring (0/1) of X: element
    lists {theta}+{2..m}, pair lists avoid their pair, full lists elsewhere
    (all shifted to 1-based colors)."""
    meta = instance.metadata
    X, F = meta["X"], meta["F"]
    if set(coloring) != set(X) or any(c not in (0, 1) for c in coloring.values()):
        raise ValueError("coloring must give every element 0 or 1")
    if any(len({coloring[x] for x in e}) < 2 for e in F):
        raise ValueError("coloring leaves a hyperedge monochromatic")
    m = len(F)
    full = set(range(1, m + 2))
    lists = {v: full for v in instance.graph.vertices}
    for x in X:
        lists[f"vX_{x}"] = {coloring[x] + 1} | set(range(3, m + 2))
    for v, pair in meta["pairs"].items():
        lists[v] = full - set(pair)
    return ListAssignment(m + 1, lists)


# -- grid padding, pre-extension and [3,4] reductions ------------------------


def pad_subgrid_to_grid(S: Graph, f_S: Mapping[str, int]
                        ) -> tuple[GridGraph, dict[str, int]]:
    """Complete an induced subgrid to its bounding-box grid; added vertices
    get size 5."""
    if S.coords is None or set(S.coords) != set(S.vertices):
        raise ValueError("subgrid needs coordinates on every vertex")
    if set(S.edges) != {tuple(sorted(e, key=S.index.__getitem__))
                        for e in grid_edges(S.coords)}:
        raise ValueError("input is not an induced subgraph of a grid")
    rows = [c[0] for c in S.coords.values()]
    cols = [c[1] for c in S.coords.values()]
    at = {c: v for v, c in S.coords.items()}
    verts, coords = [], {}
    for i in range(min(rows), max(rows) + 1):
        for j in range(min(cols), max(cols) + 1):
            v = at.get((i, j), grid_name(i, j))
            if (i, j) not in at and v in S:
                raise ValueError(f"padding name {v} clashes with a subgrid vertex")
            verts.append(v)
            coords[v] = (i, j)
    nr = max(rows) - min(rows) + 1
    nc = max(cols) - min(cols) + 1
    g = GridGraph(nr, nc, verts, grid_edges(coords), coords)
    f = {v: (int(f_S[v]) if v in S else 5) for v in verts}
    return g, f


def c6_preext_reduction(G: Graph, v1: str, v2: str, v3: str) -> GadgetWithRoles:
    """Add u1, u2, u3 closing the 6-cycle v1 u1 v2 u2 v3 u3. The cycle gets
    2-lists, the rest 3-lists over {1,2,3}; the canonical lists force three
    distinct colors on v1, v2, v3."""
    vs = (v1, v2, v3)
    if len(set(vs)) != 3 or any(v not in G for v in vs):
        raise ValueError("need three distinct vertices of G")
    parts = bipartition(G)
    if parts is None:
        raise ValueError("G is not bipartite")
    comp_of = {}
    for ci, comp in enumerate(G.components()):
        for v in comp:
            comp_of[v] = ci
    black = set(parts[0])
    # sides only constrain vertices in the same component
    for a, b in combinations(vs, 2):
        if comp_of[a] == comp_of[b] and (a in black) != (b in black):
            raise ValueError(f"{a} and {b} lie in different parts")
    us = []
    for i in (1, 2, 3):
        u = f"u{i}"
        while u in G:
            u = "_" + u
        us.append(u)
    cycle = [v1, us[0], v2, us[1], v3, us[2]]
    g = G.union(Graph(us), list(zip(cycle, cycle[1:] + cycle[:1])))
    rigid = [(1, 2), (2, 3), (1, 3), (1, 2), (2, 3), (1, 3)]
    lists = {v: (1, 2, 3) for v in g.vertices} | dict(zip(cycle, rigid))
    sizes = {v: len(lists[v]) for v in g.vertices}
    return GadgetWithRoles(g, {"C": tuple(cycle), "v": vs, "u": tuple(us)}, sizes, 3,
                           ListAssignment(3, lists), {"color_shift": 0})


# lists on the two-diamond gadget that make color 3 unavailable at X, Y, Z
# jointly; the diamond middles use {1,2,4} (see the decision notes)
_H34_LISTS = {"X": (2, 3, 4), "Y": (1, 3, 4), "Z": (1, 2, 3),
              "a1": (1, 2, 4), "a2": (1, 2, 4), "b1": (1, 2, 4), "b2": (1, 2, 4)}


def _rotate(c: int, t: int) -> int:
    return (c - 1 + t) % 4 + 1


def listcol_reduction_34(G: Graph, L: ListAssignment
                         ) -> tuple[Graph, ListAssignment, dict[str, int] | None]:
    """Turn a (2,3)-list instance over {1..4} into an equivalent 3-list
    instance: each 2-list vertex v gains a gadget whose lists forbid one
    color c outside L(v) at v, and c is added to L(v). The lists are the
    base lists rotated so that 3 maps to c. Also returns the 3-coloring
    certificate when G is bipartite."""
    if L.palette != 4:
        raise ValueError("palette must be 4")
    L.check_covers(G)
    bad = [v for v in G.vertices if len(L[v]) not in (2, 3)]
    if bad:
        raise ValueError(f"list of {bad[0]} must have 2 or 3 colors")
    g = G
    lists = {v: set(L[v]) for v in G.vertices}
    two = [v for v in G.vertices if len(L[v]) == 2]
    for v in two:
        t = next(t for t in range(4) if _rotate(3, t) not in L[v])
        pre = f"{v}/"
        g = g.union(_h_graph(pre), [(v, pre + s) for s in "XYZ"])
        lists[v].add(_rotate(3, t))
        for u, base in _H34_LISTS.items():
            lists[pre + u] = {_rotate(c, t) for c in base}
    cert = None
    parts = bipartition(G)
    if parts is not None:
        cert = {v: 1 for v in parts[0]} | {v: 2 for v in parts[1]}
        for v in two:
            pre = f"{v}/"
            cert.update({pre + "X": 3, pre + "Y": 3, pre + "Z": 3,
                         pre + "a1": 1, pre + "a2": 2, pre + "b1": 1, pre + "b2": 2})
    return g, ListAssignment(4, lists), cert
