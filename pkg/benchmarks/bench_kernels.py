"""Compare the compiled kernels against the pure-Python fallback.

Each mode runs in a fresh interpreter because the JIT switch is read at
import time. Compilation is excluded by a warm-up call.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, time
from listchoose import _jit
from listchoose.choosability import is_fk_choosable
from listchoose.graph import chocolate, complete_bipartite, theta
from listchoose.listcolor import ListAssignment, count_colorings, solve
from listchoose.graph import grid

CASES = {
    "choosable chocolate [2,3]": lambda: is_fk_choosable(chocolate(), 2, 3),
    "choosable K_{2,4} [2,3]": lambda: is_fk_choosable(complete_bipartite(2, 4), 2, 3),
    "choosable K_{2,3} [2,4]": lambda: is_fk_choosable(complete_bipartite(2, 3), 2, 4),
    "choosable theta(2,2,4) [2,4]": lambda: is_fk_choosable(theta(2, 2, 4), 2, 4),
    "count grid 3x4, 3 colors": lambda: count_colorings(grid(3, 4), ListAssignment.full(grid(3, 4), 3)),
    "solve grid 6x6, 2 colors": lambda: solve(grid(6, 6), ListAssignment.full(grid(6, 6), 2)),
}

def best_of(fn, repeat):
    fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best

repeat = int(__import__("sys").argv[1])
out = {"jit": _jit.JIT_ENABLED}
out["times"] = {name: best_of(fn, repeat) for name, fn in CASES.items()}
print(json.dumps(out))
"""


def run(disable_jit: bool, repeat: int) -> dict:
    env = dict(os.environ, LISTCHOOSE_DISABLE_JIT="1" if disable_jit else "0")
    proc = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    if not fast["jit"]:
        print("numba unavailable; both runs used the Python fallback", file=sys.stderr)
    width = max(map(len, fast["times"]))
    print(f"{'case':<{width}}  {'python':>10}  {'numba':>10}  speedup")
    for name, t_nb in fast["times"].items():
        t_py = slow["times"][name]
        print(f"{name:<{width}}  {t_py:10.5f}  {t_nb:10.5f}  x{t_py / t_nb:.1f}")


if __name__ == "__main__":
    main()
