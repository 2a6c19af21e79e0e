"""Compare the compiled and pure-Python search kernels.

Runs the same CNF instances and verification jobs through both kernels,
checks that the results agree, and prints wall-clock times.

    python benchmarks/bench_kernel.py [--full] [--repeat N]
"""

from __future__ import annotations

import argparse
import sys
import time

from hatguess import _kernel_py
from hatguess.constructors import cactus_lower_bound_certificate
from hatguess.core import Graph, cycle_game, path_game
from hatguess.solver import _Layout, _solver_cnf

try:
    from hatguess import _kernel
except ImportError:
    _kernel = None

QUICK = [
    ("C4 *3 (winning)", cycle_game([3] * 4)),
    ("C4 3,4,3,4 (losing)", cycle_game([3, 4, 3, 4])),
    ("P 3,5,3,3 (losing)", path_game([3, 5, 3, 3])),
    ("C5 2,3,3,3,3 (winning)", cycle_game([2, 3, 3, 3, 3])),
]
FULL = QUICK + [
    ("C5 *3 (losing)", cycle_game([3] * 5)),
    ("C5 3,4,3,2,4 (losing)", cycle_game([3, 4, 3, 2, 4])),
]


def _time(fn, repeat):
    best = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return best, out


def _verify_job(cert):
    game = cert.game
    idx = game.graph._index
    hats = list(game.hatness)
    nbrs = [[idx[u] for u in game.neighbors(v)] for v in game.vertices]
    tables = [list(cert.strategy.tables[v]) for v in game.vertices]
    return lambda k: k.first_uncovered(hats, nbrs, tables)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--full", action="store_true", help="include the slow instances")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernel is None:
        print("compiled kernel not built; nothing to compare", file=sys.stderr)
        return 1

    rows = []
    for name, game in FULL if args.full else QUICK:
        nvars, clauses = _solver_cnf(_Layout(game))
        tc, rc = _time(lambda: _kernel.solve_cnf(nvars, clauses, 10**9, 600.0), args.repeat)
        tp, rp = _time(lambda: _kernel_py.solve_cnf(nvars, clauses, 10**9, 600.0), 1)
        if rc != rp:
            print(f"MISMATCH on {name}", file=sys.stderr)
            return 1
        rows.append((f"solve {name}", tc, tp))

    bowtie = Graph("abcde", [("a", "b"), ("b", "c"), ("a", "c"), ("c", "d"), ("d", "e"), ("c", "e")])
    seven = Graph(
        "abcdefg",
        [("a", "b"), ("b", "c"), ("a", "c"), ("c", "d"), ("d", "e"),
         ("e", "f"), ("f", "g"), ("e", "g")],
    )
    for name, g in [("bowtie *4", bowtie), ("two triangles + path *4", seven)]:
        job = _verify_job(cactus_lower_bound_certificate(g))
        tc, rc = _time(lambda: job(_kernel), args.repeat)
        tp, rp = _time(lambda: job(_kernel_py), args.repeat)
        if rc != rp:
            print(f"MISMATCH on {name}", file=sys.stderr)
            return 1
        rows.append((f"verify {name}", tc, tp))

    width = max(len(r[0]) for r in rows)
    print(f"{'job':<{width}}  {'cython s':>10}  {'python s':>10}  {'speedup':>8}")
    for name, tc, tp in rows:
        print(f"{name:<{width}}  {tc:>10.4f}  {tp:>10.4f}  {tp / max(tc, 1e-9):>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
