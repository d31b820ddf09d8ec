"""List assignments and list-coloring algorithms."""

from __future__ import annotations

import json
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .graph import Graph
from .structure import bipartition, block_decomposition

__all__ = [
    "ListAssignment",
    "SizeFunction",
    "Coloring",
    "uniform_sizes",
    "solve",
    "is_feasible",
    "count_colorings",
    "is_proper_list_coloring",
    "greedy_order_color",
    "color_bipartite_34",
    "color_via_blocks",
    "ideal_block_colorer",
    "color_reduction_class",
    "coloring_to_json",
]

MAX_PALETTE = 62

SizeFunction = Mapping[str, int]
Coloring = dict[str, int]


def uniform_sizes(g: Graph, size: int) -> dict[str, int]:
    return {v: size for v in g.vertices}


class ListAssignment:
    """Per-vertex color lists drawn from the palette ``{1..palette}``."""

    __slots__ = ("palette", "lists")

    def __init__(self, palette: int, lists: Mapping[str, Iterable[int]]):
        if not 1 <= palette <= MAX_PALETTE:
            raise ValueError(f"palette must be in 1..{MAX_PALETTE}, got {palette}")
        norm = {}
        for v, colors in lists.items():
            cs = list(colors)
            fs = frozenset(int(c) for c in cs)
            if len(fs) != len(cs):
                raise ValueError(f"list of {v} repeats a color")
            bad = [c for c in fs if not 1 <= c <= palette]
            if bad:
                raise ValueError(f"color {bad[0]} of {v} is outside palette 1..{palette}")
            norm[str(v)] = fs
        self.palette = palette
        self.lists: dict[str, frozenset[int]] = norm

    def __getitem__(self, v: str) -> frozenset[int]:
        return self.lists[v]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ListAssignment):
            return NotImplemented
        return self.palette == other.palette and self.lists == other.lists

    def __hash__(self) -> int:
        return hash((self.palette, frozenset(self.lists.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{v}:{sorted(c)}" for v, c in self.lists.items())
        return f"ListAssignment(k={self.palette}, {{{body}}})"

    def sizes(self) -> dict[str, int]:
        return {v: len(c) for v, c in self.lists.items()}

    def check_covers(self, g: Graph) -> None:
        missing = [v for v in g.vertices if v not in self.lists]
        if missing:
            raise ValueError(f"no list for vertex {missing[0]}")

    def masks(self, g: Graph) -> np.ndarray:
        self.check_covers(g)
        return np.array([_mask(self.lists[v]) for v in g.vertices], dtype=np.int64)

    def restricted(self, vertices: Iterable[str]) -> ListAssignment:
        return ListAssignment(self.palette, {v: self.lists[v] for v in vertices})

    def to_json(self) -> dict:
        return {"palette": self.palette,
                "lists": {v: sorted(c) for v, c in self.lists.items()}}

    @classmethod
    def from_json(cls, doc: Mapping | str) -> ListAssignment:
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            return cls(int(doc["palette"]), doc["lists"])
        except (KeyError, TypeError, AttributeError):
            raise ValueError("list JSON needs 'palette' and 'lists'") from None

    @classmethod
    def full(cls, g: Graph, palette: int) -> ListAssignment:
        return cls(palette, {v: range(1, palette + 1) for v in g.vertices})


def coloring_to_json(c: Mapping[str, int]) -> dict:
    return {"colors": dict(c)}


def _mask(colors: Iterable[int]) -> int:
    m = 0
    for c in colors:
        m |= 1 << (c - 1)
    return m


def _colors_of(mask: int) -> list[int]:
    return [c + 1 for c in range(MAX_PALETTE) if mask >> c & 1]


def _domains(g: Graph, L: ListAssignment, pins: Mapping[str, int] | None) -> np.ndarray:
    dom = L.masks(g)
    for v, c in (pins or {}).items():
        if v not in g:
            raise ValueError(f"pinned vertex {v!r} not in graph")
        if c not in L.lists[v]:
            raise ValueError(f"pin {v}={c} is not in the list {sorted(L.lists[v])}")
        dom[g.index[v]] = 1 << (c - 1)
    return dom


def _run_solver(g: Graph, dom: np.ndarray) -> np.ndarray | None:
    indptr, indices = g.csr
    out = np.zeros(len(dom), np.int64)
    if _kernels.solve_masks(indptr, indices, dom, out):
        return out
    return None


def is_feasible(g: Graph, L: ListAssignment, pins: Mapping[str, int] | None = None) -> bool:
    return _run_solver(g, _domains(g, L, pins)) is not None


def solve(g: Graph, L: ListAssignment, pins: Mapping[str, int] | None = None) -> Coloring | None:
    """Proper list coloring extending ``pins``, or None if there is none.

    The search branches on the vertex with fewest remaining colors. The
    returned coloring is the lexicographically first one in (vertex order,
    color order), obtained by fixing vertices one at a time.
    """
    dom = _domains(g, L, pins)
    sol = _run_solver(g, dom)
    if sol is None:
        return None
    for i in range(len(dom)):
        for c in _colors_of(int(dom[i])):
            if c >= sol[i]:
                break
            trial = dom.copy()
            trial[i] = 1 << (c - 1)
            found = _run_solver(g, trial)
            if found is not None:
                sol = found
                break
        dom[i] = 1 << (int(sol[i]) - 1)
    return {v: int(sol[i]) for i, v in enumerate(g.vertices)}


def is_proper_list_coloring(g: Graph, L: ListAssignment | None, c: Mapping[str, int]) -> bool:
    if any(v not in c for v in g.vertices):
        return False
    if any(c[a] == c[b] for a, b in g.edges):
        return False
    if L is not None and any(c[v] not in L.lists[v] for v in g.vertices):
        return False
    return True


def _count_python(g: Graph, L: ListAssignment) -> int:
    col: dict[str, int] = {}

    def rec(i: int) -> int:
        if i == g.n:
            return 1
        v = g.vertices[i]
        total = 0
        for c in L.lists[v]:
            if all(col.get(u) != c for u in g.adj[v]):
                col[v] = c
                total += rec(i + 1)
                del col[v]
        return total

    return rec(0)


def count_colorings(g: Graph, L: ListAssignment) -> int:
    """Exact number of proper list colorings (intended for small graphs).

    Components are counted separately and multiplied.
    """
    L.check_covers(g)
    comps = g.components()
    if len(comps) > 1:
        total = 1
        for comp in comps:
            total *= _count_connected(g.subgraph(comp), L)
            if total == 0:
                break
        return total
    return _count_connected(g, L)


def _count_connected(g: Graph, L: ListAssignment) -> int:
    if g.n == 1:
        return len(L.lists[g.vertices[0]])
    bound = 1
    for v in g.vertices:
        bound *= max(1, len(L.lists[v]))
    if bound >= 1 << 62:
        return _count_python(g, L)
    indptr, indices = g.csr
    return int(_kernels.count_masks(indptr, indices, L.masks(g)))


# -- polynomial colorers -----------------------------------------------------


def greedy_order_color(g: Graph, order: Sequence[str], L: ListAssignment,
                       first_color: int) -> Coloring:
    """Give ``order[0]`` the color ``first_color``, then every later vertex the
    first color of its list not used by an earlier neighbor.

    Requires ``|L(v_i)| >= d^-(v_i) + 1`` where ``d^-`` counts earlier neighbors.
    """
    if sorted(order) != sorted(g.vertices):
        raise ValueError("order must list every vertex exactly once")
    if not order:
        return {}
    pos = {v: i for i, v in enumerate(order)}
    for i, v in enumerate(order):
        indeg = sum(1 for u in g.adj[v] if pos[u] < i)
        if len(L.lists[v]) < indeg + 1:
            raise ValueError(f"vertex {v} has list size {len(L.lists[v])} "
                             f"but {indeg} earlier neighbors")
    if first_color not in L.lists[order[0]]:
        raise ValueError(f"first color {first_color} not in the list of {order[0]}")
    col = {order[0]: first_color}
    for v in order[1:]:
        used = {col[u] for u in g.adj[v] if u in col}
        col[v] = min(c for c in L.lists[v] if c not in used)
    return col


def color_bipartite_34(g: Graph, L: ListAssignment, pin: tuple[str, int]) -> Coloring:
    """List-color a bipartite graph with 3-lists from a 4-color palette,
    honoring ``pin``, in linear time.

    On the pinned vertex's side, vertices whose list holds the pin color take
    it; the others all have the same list (the palette minus that color) and
    share one color. The opposite side avoids those two colors.
    """
    parts = bipartition(g)
    if parts is None:
        raise ValueError("graph is not bipartite")
    if L.palette != 4:
        raise ValueError(f"palette must be 4, got {L.palette}")
    L.check_covers(g)
    bad = [v for v in g.vertices if len(L.lists[v]) != 3]
    if bad:
        raise ValueError(f"vertex {bad[0]} does not have a 3-list")
    pv, pc = pin
    if pv not in g:
        raise ValueError(f"pinned vertex {pv!r} not in graph")
    if pc not in L.lists[pv]:
        raise ValueError(f"pin color {pc} not in the list of {pv}")
    black = set(parts[0])
    col: Coloring = {}
    for comp in g.components():
        if pv in comp:
            root, c = pv, pc
        else:
            root = comp[0]
            c = min(L.lists[root])
        side = black if root in black else set(comp) - black
        c2 = min(set(range(1, 5)) - {c})
        for v in comp:
            if v in side:
                col[v] = c if c in L.lists[v] else c2
        for v in comp:
            if v not in side:
                col[v] = min(L.lists[v] - {c, c2})
    return col


BlockColorer = Callable[[Graph, ListAssignment, "tuple[str, int] | None"], "Coloring | None"]


def _pinned_order(block: Graph, pin_vertex: str) -> list[str]:
    rest = sorted((v for v in block.vertices if v != pin_vertex),
                  key=lambda v: (-block.degree(v), block.index[v]))
    return [pin_vertex] + rest


def ideal_block_colorer(block: Graph, L: ListAssignment,
                        pin: tuple[str, int] | None) -> Coloring | None:
    """Color one block, pinned at its attachment vertex when ``pin`` is given.

    Uses the greedy order colorer when list sizes allow it (cliques, cycles
    with 3-lists, K_{1,1,p} with 3-lists, (D+1)-lists), the bipartite [3,4]
    colorer for bipartite blocks with 3-lists on a 4-palette, and otherwise
    the exact solver.
    """
    if pin is None:
        return solve(block, L)
    v, c = pin
    order = _pinned_order(block, v)
    try:
        return greedy_order_color(block, order, L, c)
    except ValueError:
        pass
    if (L.palette == 4 and all(len(L.lists[u]) == 3 for u in block.vertices)
            and bipartition(block) is not None):
        return color_bipartite_34(block, L, pin)
    return solve(block, L, {v: c})


def color_via_blocks(g: Graph, L: ListAssignment,
                     block_colorer: BlockColorer = ideal_block_colorer) -> Coloring | None:
    """Color block by block along the block tree.

    Each component's root block is colored unpinned; every later block is
    colored with its attachment vertex pinned to the color it already has.
    Returns None when some block cannot be completed.
    """
    L.check_covers(g)
    bd = block_decomposition(g)
    col: Coloring = {}
    for bi in bd.bfs_order:
        block = g.subgraph(bd.blocks[bi])
        sub = L.restricted(block.vertices)
        at = bd.attach[bi]
        pin = None if at is None else (at, col[at])
        if pin is not None and pin[1] not in sub.lists[at]:
            return None
        part = block_colorer(block, sub, pin)
        if part is None:
            return None
        col.update(part)
    for v in g.vertices:
        if v not in col:
            if not L.lists[v]:
                return None
            col[v] = min(L.lists[v])
    return {v: col[v] for v in g.vertices}


# -- hypergraph reduction class ----------------------------------------------


def _perfect_matching(left: Sequence[str], right: Sequence[int],
                      allowed: Callable[[str, int], bool]) -> dict[str, int] | None:
    """Kuhn's augmenting paths; ``left`` and ``right`` have equal size."""
    if len(left) != len(right):
        return None
    match_r: dict[int, str] = {}

    def augment(u: str, seen: set[int]) -> bool:
        for c in right:
            if c in seen or not allowed(u, c):
                continue
            seen.add(c)
            if c not in match_r or augment(match_r[c], seen):
                match_r[c] = u
                return True
        return False

    for u in left:
        if not augment(u, set()):
            return None
    return {u: c for c, u in match_r.items()}


def color_reduction_class(instance, L: ListAssignment) -> Coloring | None:
    """Polynomial list coloring for graphs built by ``hypergraph_reduction``.

    In any coloring the clique V0 uses the whole palette, so its two vertices
    ``v0_0``/``v0_1`` take a pair ``(a, b)`` left free by the rest of V0, the
    stable set VX+VS is colored inside ``{a, b}``, and the clique VF uses every
    color but ``a``: exactly one VF vertex takes ``b`` and all its VX
    neighbors must be ``a``. Each ordered pair and each choice of that VF
    vertex is checked with two bipartite matchings.
    """
    g = instance.graph
    roles = instance.roles
    try:
        v0 = list(roles["V0"])
        vf = list(roles["VF"])
        vx = list(roles["VX"])
        vs = list(roles["VS"])
    except KeyError as exc:
        raise ValueError(f"instance lacks role {exc.args[0]}") from None
    m = len(vf)
    k = L.palette
    if len(v0) != m + 1 or k != m + 1 or m < 2:
        raise ValueError("role sizes do not match a hypergraph reduction instance")
    if {*v0, *vf, *vx, *vs} != set(g.vertices):
        raise ValueError("roles do not partition the graph's vertices")
    L.check_covers(g)
    palette = list(range(1, k + 1))
    lists = L.lists
    x_nbrs = {f: [x for x in g.adj[f] if x in set(vx)] for f in vf}

    for a in palette:
        for b in palette:
            if a == b or a not in lists[v0[0]] or b not in lists[v0[1]]:
                continue
            others = [c for c in palette if c not in (a, b)]
            stable: dict[str, int] = {}
            ok = True
            for v in vx + vs:
                opts = [c for c in (a, b) if c in lists[v]]
                if not opts:
                    ok = False
                    break
                stable[v] = opts[0]
            if not ok:
                continue
            rest0 = _perfect_matching(v0[2:], others, lambda v, c: c in lists[v])
            if rest0 is None:
                continue
            for u in vf:
                if b not in lists[u] or any(a not in lists[x] for x in x_nbrs[u]):
                    continue
                restf = _perfect_matching([w for w in vf if w != u], others,
                                          lambda v, c: c in lists[v])
                if restf is None:
                    continue
                col = {v0[0]: a, v0[1]: b, u: b, **rest0, **restf, **stable}
                for x in x_nbrs[u]:
                    col[x] = a
                return {v: col[v] for v in g.vertices}
    return None
