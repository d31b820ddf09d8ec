"""Brute-force reference implementations used only by the tests.

They share no code with the package beyond the Graph container, and favor
obviousness over speed.
"""

from itertools import combinations, permutations, product

import networkx as nx


def brute_feasible(g, lists):
    """Any proper coloring with c(v) in lists[v]? Plain product search."""
    verts = list(g.vertices)
    for colors in product(*(sorted(lists[v]) for v in verts)):
        col = dict(zip(verts, colors))
        if all(col[a] != col[b] for a, b in g.edges):
            return True
    return False


def brute_count(g, lists):
    verts = list(g.vertices)
    total = 0
    for colors in product(*(sorted(lists[v]) for v in verts)):
        col = dict(zip(verts, colors))
        total += all(col[a] != col[b] for a, b in g.edges)
    return total


def all_assignments(g, sizes, k):
    """Every f-list assignment, as dicts of sorted tuples, in canonical order."""
    verts = list(g.vertices)
    choices = [list(combinations(range(1, k + 1), sizes[v])) for v in verts]
    for pick in product(*choices):
        yield dict(zip(verts, pick))


def brute_choosable(g, sizes, k):
    """(choosable, first infeasible assignment in canonical order or None)."""
    for lists in all_assignments(g, sizes, k):
        if not brute_feasible(g, lists):
            return False, lists
    return True, None


def orbit_representatives(g, sizes, k):
    """Assignments that are lexicographically minimal in their palette orbit,
    computed by applying every permutation explicitly."""
    verts = list(g.vertices)
    rank = {}
    for r in range(k + 1):
        for i, cs in enumerate(combinations(range(1, k + 1), r)):
            rank[cs] = i
    reps = []
    for lists in all_assignments(g, sizes, k):
        key = [rank[lists[v]] for v in verts]
        best = min([rank[tuple(sorted(p[c - 1] for c in lists[v]))] for v in verts]
                   for p in permutations(range(1, k + 1)))
        if best == key:
            reps.append(lists)
    return reps


def naive_core_vertices(g):
    """Repeatedly delete any degree-1 vertex until none is left."""
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    changed = True
    while changed:
        changed = False
        for v in list(h.nodes):
            if h.degree(v) == 1:
                h.remove_node(v)
                changed = True
                break
    return set(h.nodes)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def random_graph(rng, n, p):
    from listchoose.graph import Graph

    verts = [f"v{i}" for i in range(n)]
    return Graph(verts, [e for e in combinations(verts, 2) if rng.random() < p])
