"""Registry of checkable facts, each a small exact computation.

A fact's checker returns ``(value, detail)``; the fact passes when ``value``
equals ``expected``. Details hold only deterministic data (no timings), so
reports are byte-identical across runs.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from typing import Any, Callable

import networkx as nx

from .choosability import (
    BudgetExceeded,
    conforming_count,
    decide_23_3_CH_bipartite,
    enumerate_assignments,
    is_critical,
    is_fk_choosable,
    recognize_2_choosable,
    recognize_23_choosable,
    verify_gadget_properties,
)
from .gadgets import (
    bipartite_critical_gadget,
    candidate_148,
    compose_ff,
    forall_variable_gadget,
    gadget_G,
    gadget_H,
    hypergraph_reduction,
    is_two_colorable,
    path_transmitter,
)
from .graph import Graph, chocolate, complete_bipartite, cycle, diamond, theta
from .listcolor import (
    ListAssignment,
    color_bipartite_34,
    color_reduction_class,
    greedy_order_color,
    is_feasible,
    is_proper_list_coloring,
)

__all__ = ["PaperFact", "FactResult", "FACTS", "connected_graphs", "select_facts",
           "run_fact", "run_facts"]


@dataclass(frozen=True)
class PaperFact:
    id: str
    description: str
    checker: Callable[..., tuple[Any, dict]]
    expected: Any = True
    params: dict = field(default_factory=dict)


@dataclass
class FactResult:
    id: str
    description: str
    status: str  # "pass" | "fail" | "budget"
    value: Any
    expected: Any
    detail: dict

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {"id": self.id, "description": self.description, "status": self.status,
                "value": self.value, "expected": self.expected, "detail": self.detail}


def connected_graphs(max_n: int, min_n: int = 1) -> list[Graph]:
    """One graph per isomorphism class of connected graphs with
    ``min_n..max_n`` vertices (max 7), from the networkx graph atlas."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    out = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if min_n <= n <= max_n and nx.is_connected(h):
            out.append(Graph([str(v) for v in h.nodes], [(str(a), str(b)) for a, b in h.edges]))
    return out


def _all_graphs(max_n: int) -> list[Graph]:
    return [Graph([str(v) for v in h.nodes], [(str(a), str(b)) for a, b in h.edges])
            for h in nx.graph_atlas_g() if 1 <= h.number_of_nodes() <= max_n]


# -- checkers ----------------------------------------------------------------


def _f1(budget):
    v = is_fk_choosable(chocolate(), 2, 3, budget=budget)
    ok = not v.choosable and v.witness is not None and not is_feasible(chocolate(), v.witness)
    return ok, {"choosable": v.choosable, "witness": v.witness and v.witness.to_json(),
                "assignments_examined": v.assignments_examined}


def _f2(budget):
    rows = {}
    ok = True
    for m in range(2, 7):
        g = complete_bipartite(2, m)
        c3 = is_fk_choosable(g, 2, 3, budget=budget).choosable
        c4 = is_fk_choosable(g, 2, 4, budget=budget).choosable
        rows[str(m)] = {"[2,3]": c3, "[2,4]": c4}
        ok &= c3 and (c4 == (m <= 3))
    return ok, rows


def _f3(budget):
    g = theta(2, 2, 2, 4)
    v = is_fk_choosable(g, 2, 3, budget=budget)
    ok = (not v.choosable and v.witness is not None and not is_feasible(g, v.witness)
          and set().union(*v.witness.lists.values()) <= {1, 2, 3})
    return ok, {"witness": v.witness and v.witness.to_json()}


def _f4(budget, max_n=7):
    graphs = connected_graphs(max_n)
    mismatches = []
    for g in graphs:
        r23 = recognize_23_choosable(g)
        r2 = recognize_2_choosable(g)
        e23 = is_fk_choosable(g, 2, 3, budget=budget).choosable
        e2 = is_fk_choosable(g, 2, 4, budget=budget).choosable
        if r23 != e23 or r2 != e2:
            mismatches.append(sorted(map(list, g.sorted_edges)))
    return not mismatches, {"graphs": len(graphs), "max_vertices": max_n,
                            "mismatches": mismatches[:5]}


def _f5(budget, max_n=6):
    graphs = connected_graphs(max_n)
    diff = [sorted(map(list, g.sorted_edges)) for g in graphs
            if is_fk_choosable(g, 2, 4, budget=budget).choosable
            != is_fk_choosable(g, 2, 5, budget=budget).choosable]
    return not diff, {"graphs": len(graphs), "max_vertices": max_n, "differences": diff[:5]}


def _f6(budget):
    d = diamond()
    f = {v: d.degree(v) for v in d.vertices}
    res = {str(k): is_fk_choosable(d, f, k, budget=budget).choosable for k in (3, 4, 5)}
    return all(res.values()), {"sizes": f, "choosable": res}


def _f7(budget):
    h = gadget_H()
    r = is_critical(h.graph, h.sizes, 4, ("X", "Y", "Z"), budget=budget)
    return r.is_critical, {"conforming_assignments": conforming_count(h.graph, h.sizes, 4),
                           "bumped_runs": 3, "report": r.to_json()}


def _f8(budget):
    g2 = bipartite_critical_gadget(2)
    r = is_critical(g2.graph, g2.sizes, 3, g2.roles["W"], budget=budget)
    g3 = bipartite_critical_gadget(3)
    infeasible = not is_feasible(g3.graph, g3.canonical_assignment)
    shape = (len(g3.roles["B"]), len(g3.roles["W"]))
    ok = r.is_critical and infeasible and g2.graph.n == 3 and shape == (4, 6)
    return ok, {"ell2_critical": r.is_critical, "ell3_parts": list(shape),
                "ell3_canonical_infeasible": infeasible}


def _f9(budget):
    c5 = cycle(5)
    infeasible = 0
    all_identical = True
    for L in enumerate_assignments(c5, 2, 5, symmetry=False):
        if not is_feasible(c5, L):
            infeasible += 1
            all_identical &= len(set(L.lists.values())) == 1
    one_three = []
    for v in c5.vertices:
        f = {u: 3 if u == v else 2 for u in c5.vertices}
        one_three.append(is_fk_choosable(c5, f, 5, budget=budget).choosable)
    ok = infeasible == 10 and all_identical and all(one_three)
    return ok, {"infeasible_assignments": infeasible, "all_identical": all_identical,
                "one_3list_choosable": one_three}


def _f10(budget):
    fa = forall_variable_gadget()
    p5 = verify_gadget_properties(fa, ["5"], budget=budget, symmetry=False)["5"]
    trans = {}
    for p in range(2, 7):
        for i in range(3):
            r = verify_gadget_properties(path_transmitter(p, i), ["6"], budget=budget)["6"]
            trans[f"p{p}i{i}"] = r.passed
    ok = p5.passed and p5.assignments_examined == 3**6 and all(trans.values())
    return ok, {"forall_property5": p5.passed, "forall_assignments": p5.assignments_examined,
                "transmitters": trans}


def _hypergraphs_m2(max_x: int):
    for nx_ in range(1, max_x + 1):
        X = [f"x{i + 1}" for i in range(nx_)]
        subsets = [c for r in (1, 2, 3) for c in combinations(X, r)]
        for F in combinations_with_replacement(subsets, 2):
            yield X, [list(e) for e in F]


def _f11(budget, max_x=4):
    n_inst = 0
    bad_bicond = []
    bad_poly = 0
    systems = 0
    for X, F in _hypergraphs_m2(max_x):
        n_inst += 1
        inst = hypergraph_reduction(X, F)
        colorable = is_two_colorable(X, F) is not None
        choosable = is_fk_choosable(inst.graph, inst.sizes, inst.palette, budget=budget).choosable
        if colorable == choosable:
            bad_bicond.append({"X": X, "F": F})
        for L in enumerate_assignments(inst.graph, inst.sizes, inst.palette, symmetry=False):
            systems += 1
            poly = color_reduction_class(inst, L) is not None
            if poly != is_feasible(inst.graph, L):
                bad_poly += 1
    ok = not bad_bicond and bad_poly == 0
    return ok, {"instances": n_inst, "list_systems": systems,
                "biconditional_failures": bad_bicond[:5], "polynomial_mismatches": bad_poly}


def _f12(budget):
    H = bipartite_critical_gadget(2)
    k = 3
    cases = 0
    bad = []
    for g in _all_graphs(3):
        for v0 in g.vertices:
            for sizes in product((1, 2, 3), repeat=g.n):
                f = dict(zip(g.vertices, sizes))
                if f[v0] >= k:
                    continue
                g2, f2 = compose_ff(g, f, v0, H, k)
                cases += 1
                a = is_fk_choosable(g, f, k, budget=budget).choosable
                b = is_fk_choosable(g2, f2, k, budget=budget).choosable
                if a != b:
                    bad.append({"edges": sorted(map(list, g.sorted_edges)), "v0": v0, "f": f})
    return not bad, {"cases": cases, "failures": bad[:5]}


def _random_bipartite(rng: random.Random, n_max: int, p: float | None = None,
                      n_min: int = 1) -> Graph:
    n = rng.randint(n_min, n_max)
    nb = rng.randint(0, n)
    verts = [f"b{i}" for i in range(nb)] + [f"w{i}" for i in range(n - nb)]
    q = rng.random() if p is None else p
    edges = [(a, b) for a in verts[:nb] for b in verts[nb:] if rng.random() < q]
    order = verts[:]
    rng.shuffle(order)
    return Graph(order, edges)


def _f13(budget, trials=10_000, seed=20240613):
    rng = random.Random(seed)
    bip_fail = 0
    for _ in range(trials):
        g = _random_bipartite(rng, 40)
        L = ListAssignment(4, {v: rng.sample(range(1, 5), 3) for v in g.vertices})
        v = rng.choice(g.vertices)
        c = rng.choice(sorted(L[v]))
        col = color_bipartite_34(g, L, (v, c))
        if col[v] != c or not is_proper_list_coloring(g, L, col):
            bip_fail += 1
    greedy_fail = 0
    for _ in range(trials):
        n = rng.randint(1, 12)
        verts = [f"v{i}" for i in range(n)]
        q = rng.random()
        edges = [e for e in combinations(verts, 2) if rng.random() < q]
        g = Graph(verts, edges)
        order = verts[:]
        rng.shuffle(order)
        pos = {v: i for i, v in enumerate(order)}
        k = g.max_degree() + 1 + rng.randint(0, 2)
        lists = {}
        for v in order:
            back = sum(1 for u in g.adj[v] if pos[u] < pos[v])
            lists[v] = rng.sample(range(1, k + 1), rng.randint(back + 1, k))
        L = ListAssignment(k, lists)
        first = rng.choice(sorted(L[order[0]]))
        col = greedy_order_color(g, order, L, first)
        if col[order[0]] != first or not is_proper_list_coloring(g, L, col):
            greedy_fail += 1
    return bip_fail == 0 and greedy_fail == 0, {
        "trials": trials, "seed": seed, "bipartite_failures": bip_fail,
        "greedy_failures": greedy_fail}


def _f14(budget):
    g, hub = candidate_148()
    G = gadget_G()
    black = set(g.adj[hub])
    ok = (g.n == 148 and not g.has_triangle() and len(black) == 27
          and G.graph.degree("A") == 12 and len(G.roles["S"]) == 9)
    return ok, {"vertices": g.n, "edges": g.m, "triangle_free": not g.has_triangle(),
                "hub_degree": len(black), "gadget_vertices": G.graph.n,
                "center_degree": G.graph.degree("A"), "choosability": "not verified"}


def _planted_c6(rng: random.Random, n_max: int) -> tuple[Graph, list[str]]:
    """Bipartite graph whose first six vertices induce a 6-cycle."""
    cyc = ["b0", "w0", "b1", "w1", "b2", "w2"]
    extra = rng.randint(0, n_max - 6)
    nb = rng.randint(0, extra)
    others = [f"b{i}" for i in range(3, 3 + nb)] + [f"w{i}" for i in range(3, 3 + extra - nb)]
    q = rng.uniform(0.3, 0.9)
    edges = list(zip(cyc, cyc[1:] + cyc[:1]))
    for a in others:
        for b in cyc + others:
            if a[0] != b[0] and (b in cyc or a < b) and rng.random() < q:
                edges.append((a, b))
    verts = cyc + others
    rng.shuffle(verts)
    return Graph(verts, edges), cyc


def _f15(budget, trials=200, seed=7):
    rng = random.Random(seed)
    cases: dict[str, int] = {}
    bad = []
    for t in range(trials):
        if rng.random() < 0.25:
            g, two = _planted_c6(rng, 10)
        else:
            g = _random_bipartite(rng, 10, p=rng.uniform(0.3, 0.9), n_min=6)
            k = rng.choice((3, 4, 5, 6, 6, 6, 6, 6))
            two = rng.sample(list(g.vertices), k)
        d = decide_23_3_CH_bipartite(g, two, budget=budget)
        sizes = {v: 2 if v in two else 3 for v in g.vertices}
        e = is_fk_choosable(g, sizes, 3, budget=budget).choosable
        cases[d.case] = cases.get(d.case, 0) + 1
        if d.choosable != e:
            bad.append(t)
    return not bad, {"trials": trials, "seed": seed, "cases": dict(sorted(cases.items())),
                     "disagreements": bad[:5]}


FACTS: tuple[PaperFact, ...] = (
    PaperFact("F1", "chocolate is not [2,3]-choosable; an infeasible witness is produced", _f1),
    PaperFact("F2", "K_{2,m}, m=2..6: [2,3]-choosable; [2,4]-choosable iff m <= 3", _f2),
    PaperFact("F3", "theta(2,2,2,4) is not [2,3]-choosable (3-color witness)", _f3),
    PaperFact("F4", "core recognizers agree with exhaustive [2,3] and [2,4] deciders on all "
              "connected graphs with at most 7 vertices", _f4, params={"max_n": 7}),
    PaperFact("F5", "[2,4] and [2,5] verdicts agree on all connected graphs with at most "
              "6 vertices", _f5, params={"max_n": 6}),
    PaperFact("F6", "diamond with sizes = degrees is choosable for palettes 3, 4, 5", _f6),
    PaperFact("F7", "two-diamond gadget is ([f,4],{X,Y,Z})-critical", _f7),
    PaperFact("F8", "K_{1,2} is ([(2,1),3],W)-critical; K_{4,6} canonical lists infeasible",
              _f8),
    PaperFact("F9", "C5 over 5 colors: only five identical 2-lists are infeasible; one "
              "3-list makes it choosable", _f9),
    PaperFact("F10", "variable gadget literal property over all 3^6 systems; transmitters "
              "force their target for p=2..6", _f10),
    PaperFact("F11", "hypergraph reduction: 2-colorable iff not choosable (|X|<=4, m=2); "
              "polynomial colorer agrees with the solver", _f11, params={"max_x": 4}),
    PaperFact("F12", "gadget composition preserves choosability (K_{1,2}, k=3, base graphs "
              "with at most 3 vertices)", _f12),
    PaperFact("F13", "bipartite [3,4] colorer and greedy order colorer never fail "
              "(10^4 random instances each)", _f13),
    PaperFact("F14", "148-vertex candidate: vertex count, triangle-free, hub joined to 27 "
              "size-2 vertices (choosability not verified)", _f14),
    PaperFact("F15", "bipartite [{2,3},3] decision agrees with exhaustive search on 200 "
              "random graphs", _f15),
)


def select_facts(pattern: str | None) -> list[PaperFact]:
    """Facts whose id matches ``pattern`` exactly or as a regular expression;
    all facts when ``pattern`` is None."""
    if not pattern:
        return list(FACTS)
    exact = [f for f in FACTS if f.id == pattern]
    if exact:
        return exact
    try:
        rx = re.compile(pattern)
    except re.error:
        return []
    return [f for f in FACTS if rx.fullmatch(f.id)]


def run_fact(fact: PaperFact, budget: int, **overrides) -> FactResult:
    params = {**fact.params, **overrides}
    try:
        value, detail = fact.checker(budget, **params)
    except BudgetExceeded as exc:
        return FactResult(fact.id, fact.description, "budget", None, fact.expected,
                          {"assignments_examined": exc.examined})
    status = "pass" if value == fact.expected else "fail"
    return FactResult(fact.id, fact.description, status, value, fact.expected, detail)


def run_facts(pattern: str | None, budget: int, jobs: int = 1) -> list[FactResult]:
    facts = select_facts(pattern)
    if jobs <= 1 or len(facts) <= 1:
        return [run_fact(f, budget) for f in facts]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda f: run_fact(f, budget), facts))
