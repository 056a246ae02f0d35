"""Compare the compiled and pure-Python predicate kernels.

    python3 benchmarks/bench_kernel.py [--atoms 3] [--repeat 3]

Each run enumerates every assignment of the atoms over [-8, 8] for a fixed
set of facts whose goal always holds, so the whole box is scanned.
"""
from __future__ import annotations

import argparse
import time

from rfn import kernel
from rfn.parser import parse_term, resolve_names

FACTS = ["x + y * 2 > z - 3", "x * x + y != 7 || z < 0", "(x - y) * 3 < 100"]
GOAL = "x + y * 2 > z - 3"


def compile_all(atoms):
    scope = tuple(reversed(atoms))
    facts = [kernel.compile_predicate(resolve_names(parse_term(f), scope), len(atoms)) for f in FACTS]
    goal = kernel.compile_predicate(resolve_names(parse_term(GOAL), scope), len(atoms))
    return facts, goal


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--atoms", type=int, default=3, help="number of atoms, at least 3")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    atoms = ["x", "y", "z"] + [f"w{i}" for i in range(args.atoms - 3)]
    facts, goal = compile_all(atoms)
    points = 17 ** len(atoms)
    timings = {}
    for name, impl in kernel.available_backends().items():
        best = float("inf")
        for _ in range(args.repeat):
            start = time.perf_counter()
            result = kernel.find_countermodel(facts, goal, len(atoms), -8, 8, fuel=256, impl=impl)
            best = min(best, time.perf_counter() - start)
        assert result is None
        timings[name] = best
        print(f"{name:>7}: {best * 1e3:9.2f} ms for {points} assignments ({points / best / 1e6:.2f} M/s)")
    if "cython" in timings:
        print(f"speedup: {timings['python'] / timings['cython']:.1f}x")
    else:
        print("compiled backend unavailable; build it with `python3 setup.py build_ext --inplace`")


if __name__ == "__main__":
    main()
