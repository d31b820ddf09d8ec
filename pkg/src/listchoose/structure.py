"""Cores, block decompositions and structural classifiers."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

from .graph import Graph

__all__ = [
    "CoreResult",
    "CoreClass",
    "BlockDecomposition",
    "BlockClass",
    "compute_core",
    "block_decomposition",
    "classify_core_component",
    "classify_block",
    "is_quasi_line_perfect",
    "is_block_cactus",
    "merge_neighbors",
    "bipartition",
    "is_bipartite",
    "find_odd_hole",
]


@dataclass(frozen=True)
class CoreResult:
    core: Graph
    # (removed vertex, its last neighbor) in removal order
    removal_order: tuple[tuple[str, str], ...]

    def replay(self) -> tuple[set[str], set[tuple[str, str]]]:
        """Vertex and edge sets of the original graph, rebuilt by undoing removals."""
        verts = set(self.core.vertices)
        edges = set(self.core.edges)
        for v, u in reversed(self.removal_order):
            verts.add(v)
            edges.add((v, u))
        return verts, edges


def compute_core(g: Graph) -> CoreResult:
    """Repeatedly delete a degree-1 vertex (lowest position first) with its edge."""
    idx = g.index
    deg = {v: g.degree(v) for v in g.vertices}
    removed: set[str] = set()
    heap = [idx[v] for v in g.vertices if deg[v] == 1]
    heapq.heapify(heap)
    order = []
    while heap:
        v = g.vertices[heapq.heappop(heap)]
        if v in removed or deg[v] != 1:
            continue
        u = next(w for w in g.adj[v] if w not in removed)
        removed.add(v)
        order.append((v, u))
        deg[v] = 0
        deg[u] -= 1
        if deg[u] == 1:
            heapq.heappush(heap, idx[u])
    return CoreResult(g.without(removed), tuple(order))


# -- blocks ------------------------------------------------------------------


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[tuple[str, ...], ...]
    cut_vertices: tuple[str, ...]
    # bipartite block tree: (block index, cut vertex)
    tree_edges: tuple[tuple[int, str], ...]
    # breadth-first block order, component by component, each from its root
    bfs_order: tuple[int, ...]
    # for each block, the single vertex it shares with earlier blocks (None at roots)
    attach: tuple[str | None, ...]


def _biconnected_blocks(g: Graph) -> list[set[str]]:
    disc: dict[str, int] = {}
    low: dict[str, int] = {}
    blocks: list[set[str]] = []
    t = 0
    for root in g.vertices:
        if root in disc or not g.adj[root]:
            continue
        disc[root] = low[root] = t
        t += 1
        edge_stack: list[tuple[str, str]] = []
        stack = [(root, None, 0)]
        while stack:
            v, parent, i = stack[-1]
            nbrs = g.adj[v]
            if i < len(nbrs):
                stack[-1] = (v, parent, i + 1)
                w = nbrs[i]
                if w not in disc:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, v, 0))
                elif w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
                continue
            stack.pop()
            if not stack:
                continue
            u = stack[-1][0]
            low[u] = min(low[u], low[v])
            if low[v] >= disc[u]:
                block: set[str] = set()
                while True:
                    e = edge_stack.pop()
                    block.update(e)
                    if e == (u, v):
                        break
                blocks.append(block)
    return blocks


def block_decomposition(g: Graph, root: str | None = None) -> BlockDecomposition:
    """Blocks, cut vertices, block tree and a BFS block order, in O(|V|+|E|).

    Each component is rooted at the first block containing ``root`` when
    ``root`` lies in it, otherwise at the block holding its first vertex.
    Isolated vertices belong to no block.
    """
    idx = g.index
    raw = _biconnected_blocks(g)
    blocks = sorted((tuple(sorted(b, key=idx.__getitem__)) for b in raw),
                    key=lambda b: [idx[v] for v in b])
    member: dict[str, list[int]] = {}
    for bi, b in enumerate(blocks):
        for v in b:
            member.setdefault(v, []).append(bi)
    cuts = tuple(v for v in g.vertices if len(member.get(v, ())) > 1)
    tree = tuple((bi, c) for c in cuts for bi in member[c])

    attach: list[str | None] = [None] * len(blocks)
    seen = [False] * len(blocks)
    order: list[int] = []
    root_block = member[root][0] if root is not None and root in member else None
    for comp in g.components():
        comp_blocks = sorted({bi for v in comp for bi in member.get(v, ())})
        if not comp_blocks:
            continue
        start = root_block if root_block in comp_blocks else comp_blocks[0]
        seen[start] = True
        queue = deque([start])
        while queue:
            bi = queue.popleft()
            order.append(bi)
            for c in blocks[bi]:
                for bj in member[c]:
                    if not seen[bj]:
                        seen[bj] = True
                        attach[bj] = c
                        queue.append(bj)
    return BlockDecomposition(tuple(blocks), cuts, tree, tuple(order), tuple(attach))


# -- classification ----------------------------------------------------------


@dataclass(frozen=True)
class CoreClass:
    tag: str  # K1 | EvenCycle | Theta222m | K2m | Other
    param: int | None = None

    def __str__(self) -> str:
        return self.tag if self.param is None else f"{self.tag}({self.param})"


def _walk_to_hub(g: Graph, hub: str, first: str, hubs: set[str]) -> tuple[str, int]:
    prev, cur, length = hub, first, 1
    while cur not in hubs:
        nxt = [w for w in g.adj[cur] if w != prev]
        prev, cur = cur, nxt[0]
        length += 1
    return cur, length


def classify_core_component(g: Graph) -> CoreClass:
    """Classify a connected core against K1, C_{2m+2}, theta_{2,2,2m}, K_{2,m}.

    Uses degree analysis only. Ties resolve as C4 -> EvenCycle(4) and
    K_{2,3} -> Theta222m(1), so ``K2m(m)`` is reported for m >= 4.
    """
    if g.n == 0:
        raise ValueError("empty graph")
    if not g.is_connected():
        raise ValueError("classify_core_component expects a connected graph")
    if g.n == 1:
        return CoreClass("K1")
    degs = {v: g.degree(v) for v in g.vertices}
    low = [v for v, d in degs.items() if d < 2]
    if low:
        raise ValueError(f"not a core: vertex {low[0]} has degree {degs[low[0]]}")
    high = [v for v in g.vertices if degs[v] > 2]
    if not high:
        return CoreClass("EvenCycle", g.n) if g.n % 2 == 0 else CoreClass("Other")
    if len(high) == 2 and all(degs[v] == 3 for v in high):
        s, t = high
        ends = [_walk_to_hub(g, s, w, {s, t}) for w in g.adj[s]]
        if all(end == t for end, _ in ends):
            lengths = sorted(length for _, length in ends)
            if lengths[0] == lengths[1] == 2 and lengths[2] % 2 == 0:
                return CoreClass("Theta222m", lengths[2] // 2)
        return CoreClass("Other")
    m = g.n - 2
    if len(high) == 2 and m >= 3 and g.m == 2 * m:
        a, b = high
        if (degs[a] == degs[b] == m and not g.has_edge(a, b)
                and all(set(g.adj[v]) == {a, b} for v in g.vertices if v not in (a, b))):
            return CoreClass("K2m", m)
    return CoreClass("Other")


@dataclass(frozen=True)
class BlockClass:
    tag: str  # K4 | K11p | TwoConnectedBipartite | OddCycle | EvenCycle | Clique | SingleEdge | Other
    param: int | None = None

    def __str__(self) -> str:
        return self.tag if self.param is None else f"{self.tag}({self.param})"


def classify_block(g: Graph) -> BlockClass:
    """Classify a 2-connected graph or single edge.

    Priority: SingleEdge, K4, cycles (so K3 is OddCycle(3)), Clique(n >= 5),
    K11p(p >= 2), TwoConnectedBipartite, Other.
    """
    n, m = g.n, g.m
    if n == 2 and m == 1:
        return BlockClass("SingleEdge")
    if n < 3:
        return BlockClass("Other")
    complete = m == n * (n - 1) // 2
    if complete and n == 4:
        return BlockClass("K4")
    if m == n and all(g.degree(v) == 2 for v in g.vertices) and g.is_connected():
        return BlockClass("OddCycle" if n % 2 else "EvenCycle", n)
    if complete:
        return BlockClass("Clique", n)
    p = n - 2
    hubs = [v for v in g.vertices if g.degree(v) == n - 1]
    if (p >= 2 and len(hubs) == 2 and m == 2 * p + 1
            and all(g.degree(v) == 2 for v in g.vertices if v not in hubs)):
        return BlockClass("K11p", p)
    if is_bipartite(g):
        return BlockClass("TwoConnectedBipartite")
    return BlockClass("Other")


_QLP_TAGS = {"K4", "TwoConnectedBipartite", "K11p", "OddCycle", "EvenCycle", "SingleEdge"}
_CACTUS_TAGS = {"SingleEdge", "K4", "Clique", "OddCycle", "EvenCycle"}


def block_classes(g: Graph) -> list[BlockClass]:
    bd = block_decomposition(g)
    return [classify_block(g.subgraph(b)) for b in bd.blocks]


def is_quasi_line_perfect(g: Graph) -> bool:
    """Every block is K4, 2-connected bipartite (even cycles included), K_{1,1,p},
    an odd cycle or a single edge."""
    return all(c.tag in _QLP_TAGS for c in block_classes(g))


def is_block_cactus(g: Graph) -> bool:
    """Every block is a clique or a cycle of length at least 4."""
    return all(c.tag in _CACTUS_TAGS for c in block_classes(g))


# -- bipartite helpers -------------------------------------------------------


def bipartition(g: Graph) -> tuple[tuple[str, ...], tuple[str, ...]] | None:
    """Parts ``(B, W)`` with each component's first vertex in ``B``, or None."""
    side: dict[str, int] = {}
    for comp in g.components():
        side[comp[0]] = 0
        queue = deque([comp[0]])
        while queue:
            v = queue.popleft()
            for u in g.adj[v]:
                if u not in side:
                    side[u] = 1 - side[v]
                    queue.append(u)
                elif side[u] == side[v]:
                    return None
    black = tuple(v for v in g.vertices if side[v] == 0)
    white = tuple(v for v in g.vertices if side[v] == 1)
    return black, white


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def merge_neighbors(g: Graph, v: str) -> Graph:
    """Delete ``v`` and contract its neighborhood into one vertex.

    The merged vertex keeps the name and position of the first neighbor.
    Parallel edges collapse; bipartiteness keeps the result loop-free.
    """
    if v not in g:
        raise ValueError(f"vertex {v!r} not in graph")
    if not is_bipartite(g):
        raise ValueError("merge_neighbors requires a bipartite graph")
    nbrs = g.adj[v]
    if not nbrs:
        return g.without([v])
    target = nbrs[0]
    merged = set(nbrs)
    rename = {u: target for u in nbrs}
    verts = [u for u in g.vertices if u != v and (u not in merged or u == target)]
    edges = set()
    for a, b in g.edges:
        if v in (a, b):
            continue
        a, b = rename.get(a, a), rename.get(b, b)
        edges.add((a, b))
    return Graph(verts, edges)


def find_odd_hole(g: Graph, max_len: int | None = None) -> list[str] | None:
    """An induced odd cycle of length >= 5 (up to ``max_len``), or None."""
    idx = g.index
    limit = g.n if max_len is None else max_len
    nbr = {v: set(g.adj[v]) for v in g.vertices}

    for s in g.vertices:
        si = idx[s]
        path = [s]
        on_path = {s}

        def extend() -> list[str] | None:
            last = path[-1]
            k = len(path) - 1
            if k >= 2 and s in nbr[last]:
                if len(path) >= 5 and len(path) % 2 == 1:
                    return list(path)
                return None
            if len(path) >= limit:
                return None
            for w in g.adj[last]:
                if idx[w] <= si or w in on_path:
                    continue
                if any(w in nbr[p] for p in path[1:-1]):
                    continue
                path.append(w)
                on_path.add(w)
                found = extend()
                path.pop()
                on_path.discard(w)
                if found:
                    return found
            return None

        hole = extend()
        if hole:
            return hole
    return None

