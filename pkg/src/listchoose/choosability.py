"""Exhaustive [f,k]-choosability, criticality, and polynomial recognizers.

Assignments are enumerated vertex by vertex in the graph's order, each list
ranging over the f(v)-subsets of the palette in lexicographic order. With
symmetry breaking on, only assignments that are lexicographically minimal
under every permutation of the palette are examined. Since choosability is
invariant under recoloring, this changes neither the verdict nor the first
infeasible assignment found.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations, product
from math import comb, prod
from typing import Iterable, Iterator, Mapping

import numpy as np

from . import _kernels
from .graph import Graph, chocolate
from .listcolor import ListAssignment, is_feasible
from .structure import bipartition, classify_core_component, compute_core

__all__ = [
    "DEFAULT_BUDGET",
    "SYMMETRY_MAX_PALETTE",
    "BudgetExceeded",
    "ChoosabilityVerdict",
    "CriticalityReport",
    "BipartiteDecision",
    "PropertyResult",
    "normalize_sizes",
    "conforming_count",
    "enumerate_assignments",
    "is_fk_choosable",
    "is_critical",
    "recognize_2_choosable",
    "recognize_23_choosable",
    "decide_23_3_CH_bipartite",
    "available_colors",
    "verify_gadget_properties",
]

DEFAULT_BUDGET = 10**8
# palette permutations are materialized, so symmetry breaking is capped
SYMMETRY_MAX_PALETTE = 8


class BudgetExceeded(RuntimeError):
    """The assignment cap was reached before a verdict."""

    def __init__(self, examined: int):
        super().__init__(f"budget exhausted after {examined} assignments")
        self.examined = examined


@dataclass(frozen=True)
class ChoosabilityVerdict:
    choosable: bool
    witness: ListAssignment | None
    assignments_examined: int

    def to_json(self) -> dict:
        return {
            "choosable": self.choosable,
            "witness": None if self.witness is None else self.witness.to_json(),
            "assignments_examined": self.assignments_examined,
        }


@dataclass(frozen=True)
class CriticalityReport:
    is_critical: bool
    witness: ListAssignment | None
    failed_bump: tuple[str, ListAssignment] | None = None

    def to_json(self) -> dict:
        bump = None
        if self.failed_bump is not None:
            bump = {"vertex": self.failed_bump[0],
                    "counterexample": self.failed_bump[1].to_json()}
        return {
            "critical": self.is_critical,
            "witness": None if self.witness is None else self.witness.to_json(),
            "failed_bump": bump,
        }


def normalize_sizes(g: Graph, f: Mapping[str, int] | int, k: int) -> list[int]:
    """Sizes in vertex order; an int means the uniform size function."""
    if isinstance(f, int):
        sizes = [f] * g.n
    else:
        missing = [v for v in g.vertices if v not in f]
        if missing:
            raise ValueError(f"no size for vertex {missing[0]}")
        sizes = [int(f[v]) for v in g.vertices]
    for v, s in zip(g.vertices, sizes):
        if s < 1:
            raise ValueError(f"size of {v} must be positive, got {s}")
        if s > k:
            raise ValueError(f"size {s} of {v} exceeds palette {k}")
    return sizes


def conforming_count(g: Graph, f: Mapping[str, int] | int, k: int) -> int:
    """Number of f-list assignments over a k-palette, without symmetry."""
    return prod(comb(k, s) for s in normalize_sizes(g, f, k))


# -- enumeration tables ------------------------------------------------------


def _subsets(k: int, r: int) -> list[int]:
    return [sum(1 << (c - 1) for c in cs) for cs in combinations(range(1, k + 1), r)]


def _rank_table(k: int) -> np.ndarray:
    rank = np.zeros(1 << k, np.int64)
    for r in range(k + 1):
        for i, m in enumerate(_subsets(k, r)):
            rank[m] = i
    return rank


class _Tables:
    """Kernel inputs for one (graph, sizes, palette, symmetry) scan."""

    def __init__(self, g: Graph, sizes: list[int], k: int, symmetry: bool):
        self.g = g
        self.k = k
        n = g.n
        by_size = {r: _subsets(k, r) for r in set(sizes)}
        width = max((len(v) for v in by_size.values()), default=1)
        self.sub_masks = np.zeros((n, width), np.int64)
        self.sub_count = np.zeros(n, np.int64)
        for j, r in enumerate(sizes):
            subs = by_size[r]
            self.sub_masks[j, :len(subs)] = subs
            self.sub_count[j] = len(subs)
        self.use_sym = symmetry and 2 <= k <= SYMMETRY_MAX_PALETTE
        if self.use_sym:
            self.rank = _rank_table(k)
            self.perms = np.array(list(permutations(range(k))), np.int64)
        else:
            self.rank = np.zeros(1, np.int64)
            self.perms = np.arange(k, dtype=np.int64).reshape(1, k)

    def assignment(self, idx: np.ndarray) -> ListAssignment:
        lists = {}
        for j, v in enumerate(self.g.vertices):
            m = int(self.sub_masks[j, idx[j]])
            lists[v] = [c + 1 for c in range(self.k) if m >> c & 1]
        return ListAssignment(self.k, lists)


def _scan(t: _Tables, in_union: np.ndarray, union_bound: int, prefix: tuple[int, ...],
          budget: int) -> tuple[int, int, np.ndarray]:
    indptr, indices = t.g.csr
    witness = np.zeros(t.g.n, np.int64)
    pre = np.array(prefix if prefix else [0], np.int64)
    status, examined = _kernels.scan(
        indptr, indices, t.sub_masks, t.sub_count, t.rank, t.perms, t.use_sym,
        in_union, union_bound, pre, len(prefix), budget, witness)
    return int(status), int(examined), witness


def _split_prefixes(sub_count: np.ndarray, jobs: int) -> list[tuple[int, ...]]:
    if jobs <= 1:
        return [()]
    target = 8 * jobs
    depth, total = 0, 1
    while depth < len(sub_count) and total < target:
        total *= int(sub_count[depth])
        depth += 1
    return list(product(*(range(int(c)) for c in sub_count[:depth])))


def _search(t: _Tables, in_union: np.ndarray, union_bound: int, budget: int,
            jobs: int) -> tuple[np.ndarray | None, int]:
    """First infeasible assignment in canonical order, and the number of
    assignments examined up to and including it."""
    prefixes = _split_prefixes(t.sub_count, jobs)
    if len(prefixes) == 1:
        results = [_scan(t, in_union, union_bound, prefixes[0], budget)]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(
                lambda p: _scan(t, in_union, union_bound, p, budget), prefixes))
    # reduce in enumeration order so the outcome matches a sequential run
    total = 0
    for status, examined, witness in results:
        if status == _kernels.BUDGET_EXHAUSTED or total + examined > budget:
            raise BudgetExceeded(budget)
        total += examined
        if status == _kernels.FOUND_INFEASIBLE:
            return witness, total
    return None, total


# -- public deciders ---------------------------------------------------------


def enumerate_assignments(g: Graph, f: Mapping[str, int] | int, k: int,
                          symmetry: bool = True,
                          union_constraint: tuple[Iterable[str], int] | None = None,
                          ) -> Iterator[ListAssignment]:
    """Yield f-list assignments over ``{1..k}`` in canonical order.

    With ``symmetry`` only palette-permutation representatives are produced;
    ``union_constraint=(vertices, bound)`` keeps assignments whose lists on
    those vertices use at most ``bound`` colors together.
    """
    sizes = normalize_sizes(g, f, k)
    n = g.n
    choices = [list(combinations(range(1, k + 1), r)) for r in sizes]
    use_sym = symmetry and 2 <= k <= SYMMETRY_MAX_PALETTE
    perms = list(permutations(range(1, k + 1))) if use_sym else []
    rank = {}
    for r in set(sizes):
        for i, cs in enumerate(combinations(range(1, k + 1), r)):
            rank[cs] = i
    if union_constraint is None:
        in_union, bound = set(), None
    else:
        in_union, bound = set(union_constraint[0]), union_constraint[1]
    current: list[tuple[int, ...]] = []

    def rec(j: int, alive: list, union: frozenset) -> Iterator[ListAssignment]:
        if j == n:
            yield ListAssignment(k, dict(zip(g.vertices, current)))
            return
        v = g.vertices[j]
        for cs in choices[j]:
            u = union | set(cs) if v in in_union else union
            if bound is not None and len(u) > bound:
                continue
            keep = []
            canonical = True
            for p in alive:
                img = tuple(sorted(p[c - 1] for c in cs))
                if rank[img] < rank[cs]:
                    canonical = False
                    break
                if rank[img] == rank[cs]:
                    keep.append(p)
            if not canonical:
                continue
            current.append(cs)
            yield from rec(j + 1, keep, frozenset(u))
            current.pop()

    yield from rec(0, perms, frozenset())


def is_fk_choosable(g: Graph, f: Mapping[str, int] | int, k: int, *,
                    budget: int = DEFAULT_BUDGET, jobs: int = 1,
                    symmetry: bool = True) -> ChoosabilityVerdict:
    """Exact [f,k]-choosability by exhaustive enumeration.

    Components are decided separately. The witness is the first infeasible
    assignment of the whole graph in canonical order: the first infeasible
    component assignment, with every other vertex given ``{1..f(v)}``.
    Raises BudgetExceeded when more than ``budget`` assignments would be
    needed in total.
    """
    sizes = normalize_sizes(g, f, k)
    size_of = dict(zip(g.vertices, sizes))
    examined = 0
    best: ListAssignment | None = None
    best_key: tuple | None = None
    for comp in g.components():
        h = g.subgraph(comp)
        t = _Tables(h, [size_of[v] for v in h.vertices], k, symmetry)
        try:
            idx, used = _search(t, np.zeros(h.n, np.bool_), -1, budget - examined, jobs)
        except BudgetExceeded:
            raise BudgetExceeded(budget) from None
        examined += used
        if idx is None:
            continue
        local = dict(zip(h.vertices, idx.tolist()))
        key = tuple(local.get(v, 0) for v in g.vertices)
        if best_key is None or key < best_key:
            best_key = key
            found = t.assignment(idx)
            lists = {v: found[v] if v in local else range(1, size_of[v] + 1)
                     for v in g.vertices}
            best = ListAssignment(k, lists)
    return ChoosabilityVerdict(best is None, best, examined)


def is_critical(g: Graph, f: Mapping[str, int] | int, k: int, vprime: Iterable[str], *,
                budget: int = DEFAULT_BUDGET, jobs: int = 1,
                symmetry: bool = True) -> CriticalityReport:
    """([f,k], V')-criticality checked from the definition.

    First looks for an infeasible assignment whose lists on V' together miss
    some color, then checks that raising f by one at any single vertex of V'
    makes the graph choosable.
    """
    sizes = normalize_sizes(g, f, k)
    vp = [v for v in g.vertices if v in set(vprime)]
    if len(vp) != len(set(vprime)):
        raise ValueError("V' must be a subset of the vertices")
    size_of = dict(zip(g.vertices, sizes))
    for v in vp:
        if size_of[v] >= k:
            raise ValueError(f"size of {v} must be below the palette to be bumped")
    t = _Tables(g, sizes, k, symmetry)
    mask = np.array([v in set(vp) for v in g.vertices], np.bool_)
    idx, _ = _search(t, mask, k - 1, budget, jobs)
    if idx is None:
        return CriticalityReport(False, None, None)
    witness = t.assignment(idx)
    for v in vp:
        bumped = dict(size_of)
        bumped[v] += 1
        verdict = is_fk_choosable(g, bumped, k, budget=budget, jobs=jobs, symmetry=symmetry)
        if not verdict.choosable:
            return CriticalityReport(False, witness, (v, verdict.witness))
    return CriticalityReport(True, witness, None)


# -- polynomial recognizers --------------------------------------------------

_T_TAGS = frozenset({"K1", "EvenCycle", "Theta222m"})
_T_TILDE_TAGS = _T_TAGS | {"K2m"}


def _cores_in(g: Graph, tags: frozenset) -> bool:
    for comp in g.components():
        core = compute_core(g.subgraph(comp)).core
        cls = classify_core_component(core)
        if cls.tag not in tags:
            return False
        if cls.tag == "K2m" and cls.param < 4:
            return False
    return True


def recognize_2_choosable(g: Graph) -> bool:
    """2-choosability: every component's core is K1, an even cycle or
    theta(2,2,2m)."""
    return _cores_in(g, _T_TAGS)


def recognize_23_choosable(g: Graph) -> bool:
    """[2,3]-choosability: as for 2-choosability, plus K_{2,m} cores with
    m >= 4."""
    return _cores_in(g, _T_TILDE_TAGS)


# -- bipartite [{2,3},3] decision --------------------------------------------


@dataclass(frozen=True)
class BipartiteDecision:
    """Outcome of the bipartite [{2,3},3] decision.

    ``outcome`` is "Choosable", "NotChoosable" or "ResolvedByEnumeration";
    ``case`` names the branch that decided.
    """

    outcome: str
    choosable: bool
    case: str
    witness: ListAssignment | None = None
    assignments_examined: int = 0

    def to_json(self) -> dict:
        return {"outcome": self.outcome, "choosable": self.choosable, "case": self.case,
                "witness": None if self.witness is None else self.witness.to_json(),
                "assignments_examined": self.assignments_examined}


def _is_induced_cycle6(h: Graph) -> bool:
    return h.n == 6 and h.m == 6 and h.is_connected() and all(h.degree(v) == 2 for v in h.vertices)


def _contains_spanning_chocolate(h: Graph) -> bool:
    choc = chocolate()
    pattern = choc.sorted_edges
    names = choc.vertices
    for perm in permutations(h.vertices):
        rename = dict(zip(names, perm))
        if all(h.has_edge(rename[a], rename[b]) for a, b in pattern):
            return True
    return False


def decide_23_3_CH_bipartite(g: Graph, two_list_vertices: Iterable[str], *,
                             budget: int = DEFAULT_BUDGET, jobs: int = 1) -> BipartiteDecision:
    """[{2,3},3]-choosability of a bipartite graph with the given 2-list
    vertices (every other vertex has the 3-list {1,2,3}).

    Up to five 2-list vertices it is always choosable. With six not inducing
    a 6-cycle, the induced subgraph H on them decides: a side of H with at
    most two vertices, or a vertex of degree at most 1 in H, means choosable;
    otherwise H spans a 2x3 grid and the graph is not choosable. The
    remaining cases are enumerated.
    """
    if not g.vertices:
        return BipartiteDecision("Choosable", True, "empty")
    parts = bipartition(g)
    if parts is None:
        raise ValueError("graph is not bipartite")
    two = set(two_list_vertices)
    if not two <= set(g.vertices):
        raise ValueError("2-list vertices must belong to the graph")
    if len(two) <= 5:
        return BipartiteDecision("Choosable", True, "at most five 2-lists")
    h = g.subgraph(v for v in g.vertices if v in two)
    if len(two) == 6 and not _is_induced_cycle6(h):
        black = set(parts[0])
        nb = sum(1 for v in h.vertices if v in black)
        if nb <= 2 or 6 - nb <= 2:
            return BipartiteDecision("Choosable", True, "one side has at most two 2-lists")
        if any(h.degree(v) <= 1 for v in h.vertices):
            return BipartiteDecision("Choosable", True, "2-list vertex of degree at most 1")
        if _contains_spanning_chocolate(h):
            return BipartiteDecision("NotChoosable", False, "2-list vertices span a chocolate")
    sizes = {v: 2 if v in two else 3 for v in g.vertices}
    verdict = is_fk_choosable(g, sizes, 3, budget=budget, jobs=jobs)
    case = "six 2-lists inducing a 6-cycle" if len(two) == 6 else "enumeration"
    return BipartiteDecision("ResolvedByEnumeration", verdict.choosable, case,
                             verdict.witness, verdict.assignments_examined)


# -- gadget property verification --------------------------------------------


@dataclass
class PropertyResult:
    name: str
    passed: bool
    detail: str = ""
    counterexample: ListAssignment | None = None
    assignments_examined: int = 0

    def to_json(self) -> dict:
        return {"property": self.name, "passed": self.passed, "detail": self.detail,
                "counterexample": None if self.counterexample is None
                else self.counterexample.to_json(),
                "assignments_examined": self.assignments_examined}


def available_colors(g: Graph, L: ListAssignment, v: str,
                     pins: Mapping[str, int] | None = None) -> set[int]:
    """Colors ``v`` takes in at least one list coloring (respecting ``pins``)."""
    out = set()
    for c in sorted(L.lists[v]):
        if pins and v in pins and pins[v] != c:
            continue
        if is_feasible(g, L, {**(pins or {}), v: c}):
            out.add(c)
    return out


def _role(gadget, *names: str) -> str:
    for nm in names:
        if nm in gadget.roles:
            r = gadget.roles[nm]
            if isinstance(r, str):
                return r
            raise ValueError(f"role {nm} must be a single vertex")
    raise ValueError(f"gadget lacks role {'/'.join(names)}")


def _forall(gadget, budget: int, test, symmetry: bool) -> tuple[ListAssignment | None, int]:
    """First assignment failing ``test``, over all conforming assignments
    (palette-permutation representatives only with ``symmetry``)."""
    n = 0
    for L in enumerate_assignments(gadget.graph, gadget.sizes, gadget.palette,
                                   symmetry=symmetry):
        n += 1
        if n > budget:
            raise BudgetExceeded(budget)
        if not test(L):
            return L, n
    return None, n


def _prop_input_ideal(gadget, budget, symmetry):
    i = _role(gadget, "I", "input")
    g = gadget.graph
    bad, n = _forall(gadget, budget,
                     lambda L: available_colors(g, L, i) == set(L.lists[i]), symmetry)
    return bad is None, bad, n, "every color of the input list extends"


def _prop_output_free(gadget, budget, symmetry):
    o = _role(gadget, "O'", "O", "output")
    g = gadget.graph
    bad, n = _forall(gadget, budget,
                     lambda L: available_colors(g, L, o) == set(L.lists[o]), symmetry)
    return bad is None, bad, n, "every color of the output list extends"


def _forced(g: Graph, L: ListAssignment, src: str, c: int, dst: str, d: int) -> bool:
    if c not in L.lists[src] or d not in L.lists[dst]:
        return False
    return available_colors(g, L, dst, {src: c}) == {d}


def _prop_forcing(gadget, budget, symmetry):
    i = _role(gadget, "I", "input", "x")
    o = _role(gadget, "O'", "O", "output", "y")
    g = gadget.graph
    cand = gadget.canonical_assignment
    if cand is not None and _forced(g, cand, i, 1, o, 1):
        return True, None, 1, "canonical assignment forces output 1 from input 1"
    n = 0
    for L in enumerate_assignments(g, gadget.sizes, gadget.palette, symmetry=False):
        n += 1
        if n > budget:
            raise BudgetExceeded(budget)
        if _forced(g, L, i, 1, o, 1):
            return True, None, n, "found an assignment forcing output 1 from input 1"
    return False, cand, n, "no assignment forces output 1 from input 1"


def _prop_nice_color(gadget, budget, symmetry):
    i = _role(gadget, "I", "input")
    o = _role(gadget, "O", "output")
    g = gadget.graph

    def ok(L):
        return any(available_colors(g, L, o, {i: c}) == set(L.lists[o])
                   for c in sorted(L.lists[i]))

    bad, n = _forall(gadget, budget, ok, symmetry)
    return bad is None, bad, n, "some input color leaves every output color available"


def _prop_literals(gadget, budget, symmetry):
    u = _role(gadget, "u")
    ubar = _role(gadget, "ubar")
    g = gadget.graph

    def ok(L):
        au = available_colors(g, L, u)
        ab = available_colors(g, L, ubar)
        if not au or not ab:
            return False
        if len(au) < len(L.lists[u]) and ab != set(L.lists[ubar]):
            return False
        if len(ab) < len(L.lists[ubar]) and au != set(L.lists[u]):
            return False
        return True

    bad, n = _forall(gadget, budget, ok, symmetry)
    return bad is None, bad, n, "a forced literal leaves the other literal free"


def _prop_transmit(gadget, budget, symmetry):
    x = _role(gadget, "x")
    y = _role(gadget, "y")
    target = gadget.metadata.get("target_color")
    L = gadget.canonical_assignment
    if L is None or target is None:
        raise ValueError("transmitter needs a canonical assignment and target color")
    ok = L.lists[x] == frozenset({1, 2}) and _forced(gadget.graph, L, x, 1, y, target)
    return ok, (None if ok else L), 1, f"input 1 forces output {target}"


def _prop_choosable(gadget, budget, symmetry):
    v = is_fk_choosable(gadget.graph, gadget.sizes, gadget.palette, budget=budget)
    return v.choosable, v.witness, v.assignments_examined, "choosable"


def _prop_critical(gadget, budget, symmetry):
    s = gadget.roles.get("S")
    if s is None:
        raise ValueError("gadget lacks role S")
    r = is_critical(gadget.graph, gadget.sizes, gadget.palette, s, budget=budget)
    if r.is_critical:
        return True, None, 0, "critical on S"
    bad = r.failed_bump[1] if r.failed_bump else None
    return False, bad, 0, "not critical on S"


_PROPERTIES = {
    "1": _prop_input_ideal,
    "1'": _prop_input_ideal,
    "2": _prop_output_free,
    "3": _prop_forcing,
    "3'": _prop_forcing,
    "4'": _prop_nice_color,
    "5": _prop_literals,
    "6": _prop_transmit,
    "choosable": _prop_choosable,
    "critical": _prop_critical,
}


def verify_gadget_properties(gadget, properties: Iterable[str], *,
                             budget: int = DEFAULT_BUDGET,
                             symmetry: bool = True) -> dict[str, PropertyResult]:
    """Check named gadget properties exhaustively.

    Properties: "1"/"1'" (any input color extends), "2" (any output color
    extends), "3"/"3'" (some assignment makes input 1 force output 1), "4'"
    (some input color leaves all output colors available), "5" (literal
    pair: if one literal is forced the other is free), "6" (transmitter:
    input 1 forces the target color), "choosable", "critical" (on role S).
    The universal properties are invariant under recoloring, so ``symmetry``
    only changes how many assignments are visited.
    """
    report = {}
    for name in properties:
        check = _PROPERTIES.get(name)
        if check is None:
            raise ValueError(f"unknown property {name!r}")
        ok, bad, n, detail = check(gadget, budget, symmetry)
        report[name] = PropertyResult(name, ok, detail, bad, n)
    return report
