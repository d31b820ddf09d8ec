"""Simple undirected graphs with string vertex ids and a fixed vertex order.

The declared vertex order is the canonical order used by every search in the
package, so witnesses and outputs are deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "Graph",
    "GridGraph",
    "grid_name",
    "grid_edges",
    "cycle",
    "path",
    "complete",
    "complete_multipartite",
    "complete_bipartite",
    "k11p",
    "theta",
    "gamma",
    "grid",
    "chocolate",
    "diamond",
    "build_named",
    "parse_descriptor",
    "graph_from_json",
    "graph_to_json",
    "to_dot",
]


@dataclass(frozen=True, eq=False, init=False, repr=False)
class Graph:
    """Simple graph. ``edges`` are stored as pairs ordered by vertex position."""

    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    coords: Mapping[str, tuple[int, int]] | None = field(default=None)

    def __init__(self, vertices: Iterable[str], edges: Iterable[Sequence[str]] = (),
                 coords: Mapping[str, Sequence[int]] | None = None):
        verts = tuple(str(v) for v in vertices)
        pos = {v: i for i, v in enumerate(verts)}
        if len(pos) != len(verts):
            raise ValueError("duplicate vertex identifiers")
        norm = set()
        for e in edges:
            if len(e) != 2:
                raise ValueError(f"edge {e!r} must have exactly two endpoints")
            a, b = str(e[0]), str(e[1])
            if a not in pos or b not in pos:
                raise ValueError(f"edge {a}-{b} uses an undeclared vertex")
            if a == b:
                raise ValueError(f"loop at {a}")
            if pos[a] > pos[b]:
                a, b = b, a
            norm.add((a, b))
        cdict = None
        if coords is not None:
            cdict = {}
            for v, c in coords.items():
                if v not in pos:
                    raise ValueError(f"coordinate for undeclared vertex {v}")
                cdict[v] = (int(c[0]), int(c[1]))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "coords", cdict)

    # -- basic queries -------------------------------------------------------

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adj(self) -> dict[str, tuple[str, ...]]:
        nb: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            nb[a].append(b)
            nb[b].append(a)
        idx = self.index
        return {v: tuple(sorted(ns, key=idx.__getitem__)) for v, ns in nb.items()}

    @cached_property
    def sorted_edges(self) -> tuple[tuple[str, str], ...]:
        idx = self.index
        return tuple(sorted(self.edges, key=lambda e: (idx[e[0]], idx[e[1]])))

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """``(indptr, indices)`` adjacency arrays over vertex positions."""
        idx = self.index
        indptr = np.zeros(len(self.vertices) + 1, np.int64)
        cols: list[int] = []
        for i, v in enumerate(self.vertices):
            cols.extend(idx[u] for u in self.adj[v])
            indptr[i + 1] = len(cols)
        return indptr, np.asarray(cols, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: object) -> bool:
        return v in self.index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.vertices == other.vertices and self.edges == other.edges
                and self.coords == other.coords)

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={len(self.vertices)}, m={len(self.edges)})"

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: str) -> tuple[str, ...]:
        return self.adj[v]

    def degree(self, v: str) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(ns) for ns in self.adj.values()), default=0)

    def has_edge(self, a: str, b: str) -> bool:
        idx = self.index
        if a not in idx or b not in idx:
            return False
        if idx[a] > idx[b]:
            a, b = b, a
        return (a, b) in self.edges

    # -- derived graphs ------------------------------------------------------

    def subgraph(self, keep: Iterable[str]) -> Graph:
        """Induced subgraph; keeps the parent's vertex order and coordinates."""
        ks = set(keep)
        verts = [v for v in self.vertices if v in ks]
        edges = [e for e in self.edges if e[0] in ks and e[1] in ks]
        coords = None
        if self.coords is not None:
            coords = {v: self.coords[v] for v in verts if v in self.coords}
        return Graph(verts, edges, coords)

    def without(self, drop: Iterable[str]) -> Graph:
        ds = set(drop)
        return self.subgraph(v for v in self.vertices if v not in ds)

    def relabel(self, mapping: Mapping[str, str]) -> Graph:
        verts = [mapping.get(v, v) for v in self.vertices]
        edges = [(mapping.get(a, a), mapping.get(b, b)) for a, b in self.edges]
        coords = None
        if self.coords is not None:
            coords = {mapping.get(v, v): c for v, c in self.coords.items()}
        return Graph(verts, edges, coords)

    def prefixed(self, prefix: str) -> Graph:
        return self.relabel({v: prefix + v for v in self.vertices})

    def union(self, other: Graph, extra_edges: Iterable[Sequence[str]] = ()) -> Graph:
        """Disjoint union (names must not clash) plus ``extra_edges``."""
        clash = set(self.vertices) & set(other.vertices)
        if clash:
            raise ValueError(f"vertex names clash: {sorted(clash)[:5]}")
        return Graph(self.vertices + other.vertices,
                     list(self.edges) + list(other.edges) + list(extra_edges))

    def components(self) -> list[tuple[str, ...]]:
        """Connected components, each in canonical order, ordered by first vertex."""
        seen: set[str] = set()
        comps = []
        idx = self.index
        for s in self.vertices:
            if s in seen:
                continue
            seen.add(s)
            stack = [s]
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self.adj[v]:
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            comps.append(tuple(sorted(comp, key=idx.__getitem__)))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def has_triangle(self) -> bool:
        for a, b in self.edges:
            if set(self.adj[a]) & set(self.adj[b]):
                return True
        return False


@dataclass(frozen=True, eq=False, init=False, repr=False)
class GridGraph(Graph):
    """A grid G(rows, cols) or an induced subgraph of one.

    Vertex ``(i, j)`` (1-based) is named ``g{i}_{j}``; coordinates are kept
    in ``coords`` so subgrids remember their position in the parent grid.
    """

    rows: int = 0
    cols: int = 0

    def __init__(self, rows: int, cols: int, vertices=None, edges=None, coords=None):
        if rows < 1 or cols < 1:
            raise ValueError("grid dimensions must be positive")
        if vertices is None:
            coords = {}
            vertices = []
            for i in range(1, rows + 1):
                for j in range(1, cols + 1):
                    name = grid_name(i, j)
                    vertices.append(name)
                    coords[name] = (i, j)
            edges = grid_edges(coords)
        super().__init__(vertices, edges, coords)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    def __repr__(self) -> str:
        return f"GridGraph({self.rows}x{self.cols}, n={self.n}, m={self.m})"

    def subgraph(self, keep: Iterable[str]) -> GridGraph:
        sub = Graph.subgraph(self, keep)
        return GridGraph(self.rows, self.cols, sub.vertices, sub.edges, sub.coords)


def grid_name(i: int, j: int) -> str:
    return f"g{i}_{j}"


def grid_edges(coords: Mapping[str, tuple[int, int]]) -> list[tuple[str, str]]:
    """Unit horizontal and vertical steps between the given coordinates."""
    at = {c: v for v, c in coords.items()}
    edges = []
    for v, (i, j) in coords.items():
        for di, dj in ((0, 1), (1, 0)):
            u = at.get((i + di, j + dj))
            if u is not None:
                edges.append((v, u))
    return edges


# -- named families ----------------------------------------------------------


def _names(prefix: str, count: int, start: int = 0) -> list[str]:
    return [f"{prefix}{i}" for i in range(start, start + count)]


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    vs = _names("c", n)
    return Graph(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)])


def path(n: int) -> Graph:
    """Path on ``n`` vertices (length ``n - 1``)."""
    if n < 1:
        raise ValueError("path needs n >= 1")
    vs = _names("p", n)
    return Graph(vs, list(zip(vs, vs[1:])))


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    vs = _names("k", n)
    return Graph(vs, combinations(vs, 2))


def complete_multipartite(*parts: int) -> Graph:
    if not parts or any(p < 1 for p in parts):
        raise ValueError("part sizes must be positive")
    letters = "bwxyz" if len(parts) <= 2 else "abcdefghij"
    groups = [_names(letters[i], p) for i, p in enumerate(parts)]
    vs = [v for g in groups for v in g]
    edges = [(a, b) for g1, g2 in combinations(groups, 2) for a in g1 for b in g2]
    return Graph(vs, edges)


def complete_bipartite(p: int, q: int) -> Graph:
    """K_{p,q} with parts ``b0..`` and ``w0..``."""
    return complete_multipartite(p, q)


def k11p(p: int) -> Graph:
    """K_{1,1,p}: adjacent ``a``, ``b`` both joined to the stable set ``s0..``."""
    if p < 1:
        raise ValueError("K_{1,1,p} needs p >= 1")
    ss = _names("s", p)
    edges = [("a", "b")] + [(x, s) for s in ss for x in ("a", "b")]
    return Graph(["a", "b"] + ss, edges)


def theta(*lengths: int) -> Graph:
    """Hubs ``s``, ``t`` joined by internally disjoint paths of the given lengths.

    Internal vertices of path ``i`` are ``P{i}_1 .. P{i}_{len-1}`` from ``s``.
    """
    if len(lengths) < 2:
        raise ValueError("a theta graph needs at least two paths")
    if any(a < 1 for a in lengths):
        raise ValueError("path lengths must be positive")
    if sum(1 for a in lengths if a == 1) > 1:
        raise ValueError("at most one path of length 1 (no parallel edges)")
    vs = ["s", "t"]
    edges = []
    for i, a in enumerate(lengths, start=1):
        inner = [f"P{i}_{j}" for j in range(1, a)]
        vs.extend(inner)
        chain = ["s"] + inner + ["t"]
        edges.extend(zip(chain, chain[1:]))
    return Graph(vs, edges)


def gamma(p: int, q: int, r: int) -> Graph:
    """Cycles C_p (``x0..``) and C_q (``y0..``) joined by a path of length ``r``
    from ``x0`` to ``y0``; ``r = 0`` makes them share ``x0``."""
    if p < 3 or q < 3 or r < 0:
        raise ValueError("gamma needs p, q >= 3 and r >= 0")
    xs = _names("x", p)
    ys = _names("y", q)
    if r == 0:
        ys[0] = xs[0]
    inner = [f"m{i}" for i in range(1, r)]
    vs = xs + inner + (ys if r > 0 else ys[1:])
    edges = [(xs[i], xs[(i + 1) % p]) for i in range(p)]
    edges += [(ys[i], ys[(i + 1) % q]) for i in range(q)]
    if r > 0:
        chain = [xs[0]] + inner + [ys[0]]
        edges += list(zip(chain, chain[1:]))
    return Graph(vs, edges)


def grid(p: int, q: int) -> GridGraph:
    return GridGraph(p, q)


def chocolate() -> GridGraph:
    """The 2 x 3 grid."""
    return GridGraph(2, 3)


def diamond() -> Graph:
    """K_4 minus the edge v1v4; ``v1`` and ``v4`` have degree 2."""
    vs = ["v1", "v2", "v3", "v4"]
    return Graph(vs, [(a, b) for a, b in combinations(vs, 2) if {a, b} != {"v1", "v4"}])


_FAMILIES = {
    "cycle": (cycle, 1),
    "path": (path, 1),
    "complete": (complete, 1),
    "completebipartite": (complete_bipartite, 2),
    "completetripartite": (lambda p, q, r: complete_multipartite(p, q, r), 3),
    "k11p": (k11p, 1),
    "theta3": (lambda a, b, c: theta(a, b, c), 3),
    "theta4": (lambda a, b, c, d: theta(a, b, c, d), 4),
    "gamma": (gamma, 3),
    "grid": (grid, 2),
    "chocolate": (chocolate, 0),
    "diamond": (diamond, 0),
}
_ALIASES = {"c": "cycle", "p": "path", "k": "complete", "kbip": "completebipartite",
            "ktri": "completetripartite"}


def build_named(name: str, *params: int) -> Graph:
    """Build a named family member, e.g. ``build_named("theta3", 2, 2, 4)``.

    ``theta`` dispatches on the number of path lengths given.
    """
    key = name.lower().replace("_", "").replace("-", "")
    key = _ALIASES.get(key, key)
    if key == "theta":
        key = "theta3" if len(params) == 3 else "theta4" if len(params) == 4 else key
    if key not in _FAMILIES:
        raise ValueError(f"unknown graph family {name!r}")
    fn, arity = _FAMILIES[key]
    if len(params) != arity:
        raise ValueError(f"{name} takes {arity} parameter(s), got {len(params)}")
    return fn(*params)


def parse_descriptor(text: str) -> Graph:
    """Parse ``family[:p1,p2,...]``, e.g. ``theta:2,2,4`` or ``chocolate``."""
    name, _, rest = text.strip().partition(":")
    params = []
    if rest.strip():
        try:
            params = [int(x) for x in rest.split(",")]
        except ValueError:
            raise ValueError(f"bad parameters in descriptor {text!r}") from None
    return build_named(name, *params)


# -- serialization -----------------------------------------------------------


def graph_to_json(g: Graph) -> dict:
    doc: dict = {"vertices": list(g.vertices), "edges": [list(e) for e in g.sorted_edges]}
    if g.coords is not None:
        doc["coords"] = {v: list(g.coords[v]) for v in g.vertices if v in g.coords}
    if isinstance(g, GridGraph):
        doc["grid"] = [g.rows, g.cols]
    return doc


def graph_from_json(doc: Mapping | str) -> Graph:
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        verts = doc["vertices"]
        edges = doc.get("edges", [])
    except (KeyError, TypeError, AttributeError):
        raise ValueError("graph JSON needs a 'vertices' list and an 'edges' list") from None
    coords = doc.get("coords")
    if "grid" in doc:
        rows, cols = doc["grid"]
        return GridGraph(rows, cols, verts, edges, coords)
    return Graph(verts, edges, coords)


def to_dot(g: Graph, name: str = "G", colors: Mapping[str, int] | None = None) -> str:
    lines = [f"graph {json.dumps(name)} {{"]
    for v in g.vertices:
        attrs = []
        if colors is not None and v in colors:
            attrs.append(f'label="{v}:{colors[v]}"')
        if g.coords is not None and v in g.coords:
            i, j = g.coords[v]
            attrs.append(f'pos="{j},{-i}!"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {json.dumps(v)}{suffix};")
    for a, b in g.sorted_edges:
        lines.append(f"  {json.dumps(a)} -- {json.dumps(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
