"""Command-line interface.

JSON goes to stdout, diagnostics to stderr. Exit codes: 0 yes/feasible,
1 no/infeasible, 2 usage or data error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .choosability import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    is_critical,
    is_fk_choosable,
    recognize_2_choosable,
    recognize_23_choosable,
)
from .facts import run_facts, select_facts
from .gadgets import (
    bipartite_critical_gadget,
    c6_preext_reduction,
    forall_variable_gadget,
    gadget_G,
    gadget_G3,
    gadget_H,
    hypergraph_reduction,
    listcol_reduction_34,
    pad_subgrid_to_grid,
    path_transmitter,
)
from .graph import Graph, graph_from_json, graph_to_json, parse_descriptor, to_dot
from .listcolor import ListAssignment, coloring_to_json, solve
from .structure import (
    block_decomposition,
    classify_block,
    classify_core_component,
    compute_core,
    is_block_cactus,
    is_quasi_line_perfect,
)

EXIT_YES, EXIT_NO, EXIT_ERROR, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _use_color() -> bool:
    return "NO_COLOR" not in os.environ and sys.stderr.isatty()


def _diag(kind: str, msg: str) -> None:
    tag = f"{kind}:"
    if _use_color():
        code = "31" if kind == "error" else "33"
        tag = f"\033[{code}m{tag}\033[0m"
    print(f"{tag} {msg}", file=sys.stderr)


def _emit(doc: Any) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _load_json(path: str) -> Any:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON at line {exc.lineno}, "
                         f"column {exc.colno}: {exc.msg}") from None


def _load_graph(arg: str) -> Graph:
    """A JSON file path, or a named descriptor such as ``theta:2,2,4``."""
    if Path(arg).is_file() or arg.endswith(".json"):
        return graph_from_json(_load_json(arg))
    return parse_descriptor(arg)


def _load_lists(path: str) -> ListAssignment:
    return ListAssignment.from_json(_load_json(path))


def _load_sizes(path: str) -> dict[str, int]:
    doc = _load_json(path)
    if isinstance(doc, dict) and "sizes" in doc:
        doc = doc["sizes"]
    if not isinstance(doc, dict):
        raise UsageError(f"{path}: expected an object mapping vertices to sizes")
    return {str(k): int(v) for k, v in doc.items()}


def _parse_pins(items: Sequence[str]) -> dict[str, int]:
    pins = {}
    for it in items:
        v, sep, c = it.rpartition("=")
        if not sep or not v:
            raise UsageError(f"pin {it!r} must look like vertex=color")
        try:
            pins[v] = int(c)
        except ValueError:
            raise UsageError(f"pin color in {it!r} is not an integer") from None
    return pins


# -- commands ----------------------------------------------------------------


def cmd_color(a) -> int:
    g = _load_graph(a.graph)
    L = _load_lists(a.lists)
    col = solve(g, L, _parse_pins(a.pin))
    if col is None:
        _emit({"colors": None})
        return EXIT_NO
    _emit(coloring_to_json(col))
    return EXIT_YES


def cmd_choosable(a) -> int:
    g = _load_graph(a.graph)
    if (a.uniform is None) == (a.sizes is None):
        raise UsageError("give exactly one of --uniform and --sizes")
    f = a.uniform if a.uniform is not None else _load_sizes(a.sizes)
    v = is_fk_choosable(g, f, a.palette, budget=a.budget, jobs=a.jobs,
                        symmetry=not a.no_symmetry)
    _emit(v.to_json())
    return EXIT_YES if v.choosable else EXIT_NO


def cmd_critical(a) -> int:
    g = _load_graph(a.graph)
    f = _load_sizes(a.sizes)
    subset = [s for s in a.subset.split(",") if s]
    r = is_critical(g, f, a.palette, subset, budget=a.budget, jobs=a.jobs)
    _emit(r.to_json())
    return EXIT_YES if r.is_critical else EXIT_NO


def cmd_recognize(a) -> int:
    g = _load_graph(a.graph)
    ok = recognize_2_choosable(g) if a.problem == "2ch" else recognize_23_choosable(g)
    cores = []
    for comp in g.components():
        core = compute_core(g.subgraph(comp)).core
        cores.append(str(classify_core_component(core)))
    _emit({"problem": a.problem, "choosable": ok, "core_classes": cores})
    return EXIT_YES if ok else EXIT_NO


def cmd_core(a) -> int:
    g = _load_graph(a.graph)
    res = compute_core(g)
    doc = graph_to_json(res.core)
    doc["removal_order"] = [list(p) for p in res.removal_order]
    _emit(doc)
    return EXIT_YES


def cmd_blocks(a) -> int:
    g = _load_graph(a.graph)
    bd = block_decomposition(g, a.root)
    _emit({
        "blocks": [list(b) for b in bd.blocks],
        "classes": [str(classify_block(g.subgraph(b))) for b in bd.blocks],
        "cut_vertices": list(bd.cut_vertices),
        "tree_edges": [list(e) for e in bd.tree_edges],
        "bfs_order": list(bd.bfs_order),
        "attach": list(bd.attach),
        "quasi_line_perfect": is_quasi_line_perfect(g),
        "block_cactus": is_block_cactus(g),
    })
    return EXIT_YES


def _ints(params: Sequence[str], count: int, name: str) -> list[int]:
    if len(params) != count:
        raise UsageError(f"gadget {name} takes {count} integer parameter(s)")
    try:
        return [int(p) for p in params]
    except ValueError:
        raise UsageError(f"gadget {name} parameters must be integers") from None


def _build_gadget(name: str, params: Sequence[str]) -> tuple[Graph, ListAssignment | None, dict]:
    """Returns (graph, lists or None, full JSON document)."""
    key = name.lower()
    if key in ("forall", "h", "g3", "g"):
        _ints(params, 0, name)
        gad = {"forall": forall_variable_gadget, "h": gadget_H,
               "g3": gadget_G3, "g": gadget_G}[key]()
    elif key == "transmitter":
        p, i = _ints(params, 2, name)
        gad = path_transmitter(p, i)
    elif key == "bipcrit":
        (ell,) = _ints(params, 1, name)
        gad = bipartite_critical_gadget(ell)
    elif key == "hyperred":
        if len(params) != 1:
            raise UsageError("gadget hyperred takes a hypergraph JSON file")
        doc = _load_json(params[0])
        try:
            gad = hypergraph_reduction(doc["X"], doc["F"])
        except (KeyError, TypeError):
            raise UsageError("hypergraph JSON needs 'X' and 'F'") from None
    elif key == "c6preext":
        if len(params) != 4:
            raise UsageError("gadget c6preext takes a graph and three vertices")
        gad = c6_preext_reduction(_load_graph(params[0]), *params[1:])
    elif key == "padgrid":
        if len(params) != 2:
            raise UsageError("gadget padgrid takes a subgrid graph and a sizes file")
        g, f = pad_subgrid_to_grid(_load_graph(params[0]), _load_sizes(params[1]))
        return g, None, {"graph": graph_to_json(g), "sizes": f}
    elif key == "listcol34":
        if len(params) != 2:
            raise UsageError("gadget listcol34 takes a graph and a lists file")
        g, L, cert = listcol_reduction_34(_load_graph(params[0]), _load_lists(params[1]))
        return g, L, {"graph": graph_to_json(g), "lists": L.to_json(), "certificate": cert}
    else:
        raise UsageError(f"unknown gadget {name!r}")
    return gad.graph, gad.canonical_assignment, gad.to_json()


def cmd_gadget(a) -> int:
    g, L, doc = _build_gadget(a.name, a.params)
    if a.out:
        Path(a.out).write_text(json.dumps(graph_to_json(g), indent=2) + "\n")
    if a.lists:
        if L is None:
            raise UsageError(f"gadget {a.name} has no list assignment to write")
        Path(a.lists).write_text(json.dumps(L.to_json(), indent=2) + "\n")
    if not a.out and not a.lists:
        _emit(doc)
    return EXIT_YES


def cmd_verify_paper(a) -> int:
    if not select_facts(a.filter):
        _diag("warning", f"no fact matches {a.filter!r}")
        _emit({"facts": [], "all_passed": True})
        return EXIT_YES
    results = run_facts(a.filter, a.budget, a.jobs)
    for r in results:
        _diag("info", f"{r.id} {r.status.upper()}  {r.description}")
    ok = all(r.passed for r in results)
    _emit({"facts": [r.to_json() for r in results], "all_passed": ok})
    return EXIT_YES if ok else EXIT_NO


def cmd_export_dot(a) -> int:
    g = _load_graph(a.graph)
    colors = None
    if a.colors:
        doc = _load_json(a.colors)
        colors = doc.get("colors", doc) if isinstance(doc, dict) else None
        if not isinstance(colors, dict):
            raise UsageError(f"{a.colors}: expected a coloring object")
    sys.stdout.write(to_dot(g, a.name, colors))
    return EXIT_YES


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS,
                        help="worker threads for enumeration (default 1)")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help=f"cap on assignments examined (default {DEFAULT_BUDGET})")

    p = argparse.ArgumentParser(prog="listchoose", parents=[common],
                                description="List coloring and [f,k]-choosability tools.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_, description=help_)
        sp.set_defaults(func=func)
        return sp

    graph_help = "graph JSON file or descriptor (e.g. theta:2,2,4, grid:3,5, chocolate)"

    sp = add("color", cmd_color, "list-color a graph")
    sp.add_argument("graph", help=graph_help)
    sp.add_argument("lists", help="list assignment JSON file")
    sp.add_argument("--pin", action="append", default=[], metavar="V=C",
                    help="precolor vertex V with color C (repeatable)")

    sp = add("choosable", cmd_choosable, "decide [f,k]-choosability exhaustively")
    sp.add_argument("graph", help=graph_help)
    sp.add_argument("--uniform", type=int, help="uniform list size")
    sp.add_argument("--sizes", help="JSON file mapping vertices to list sizes")
    sp.add_argument("--palette", type=int, required=True, help="palette size k")
    sp.add_argument("--no-symmetry", action="store_true",
                    help="enumerate without palette symmetry breaking")

    sp = add("critical", cmd_critical, "check ([f,k],V')-criticality")
    sp.add_argument("graph", help=graph_help)
    sp.add_argument("sizes", help="JSON file mapping vertices to list sizes")
    sp.add_argument("--palette", type=int, required=True, help="palette size k")
    sp.add_argument("--subset", required=True, help="comma-separated vertices of V'")

    sp = add("recognize", cmd_recognize, "polynomial 2- or [2,3]-choosability test")
    sp.add_argument("graph", help=graph_help)
    sp.add_argument("--problem", choices=("2ch", "23ch"), required=True)

    sp = add("core", cmd_core, "strip degree-1 vertices repeatedly")
    sp.add_argument("graph", help=graph_help)

    sp = add("blocks", cmd_blocks, "block decomposition and block classes")
    sp.add_argument("graph", help=graph_help)
    sp.add_argument("--root", help="vertex whose block roots its component")

    sp = add("gadget", cmd_gadget, "build a reduction gadget")
    sp.add_argument("name", help="forall, transmitter, H, G3, G, bipcrit, hyperred, "
                                 "c6preext, padgrid or listcol34")
    sp.add_argument("params", nargs="*", help="gadget parameters")
    sp.add_argument("--out", help="write the graph JSON here")
    sp.add_argument("--lists", help="write the list assignment JSON here")

    sp = add("verify-paper", cmd_verify_paper, "run the built-in fact checks")
    sp.add_argument("--filter", help="fact id or regular expression over ids")

    sp = add("export-dot", cmd_export_dot, "write Graphviz DOT")
    sp.add_argument("graph", help=graph_help)
    sp.add_argument("--colors", help="coloring JSON to label vertices with")
    sp.add_argument("--name", default="G", help="graph name in the DOT output")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else EXIT_YES
    args.jobs = max(1, getattr(args, "jobs", 1))
    args.budget = getattr(args, "budget", DEFAULT_BUDGET)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        _diag("error", str(exc))
        _emit({"budget_exceeded": True, "assignments_examined": exc.examined})
        return EXIT_BUDGET
    except (UsageError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        _diag("error", str(msg))
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
