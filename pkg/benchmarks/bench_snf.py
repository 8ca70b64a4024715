"""Compare the compiled and pure-Python Smith normal form kernels.

Workloads are the boundary matrices the oracle actually reduces (unreduced
sphere complexes evaluated at the free level) plus random dense matrices.

    python benchmarks/bench_snf.py [--repeat 3] [--json out.json]
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import timeit

from bredon import _snf_py, abelian
from bredon.cellular import coefficient_table, evaluate, sphere_complex
from bredon.repring import GroupSpec, parse_grading


def oracle_matrices(n: int, rep: str) -> list[tuple[str, list[list[int]], int]]:
    V = parse_grading(rep, GroupSpec(n))
    C = sphere_complex(V, reduced=False)
    E = evaluate(C, coefficient_table(n, "A"), 1, "homology")
    out = []
    for q, m in sorted(E.maps.items()):
        if m and m[0]:
            out.append((f"n={n} S({rep}) d_{q}", m, len(m[0])))
    return out


def random_matrix(rows: int, cols: int, bound: int, seed: int, density: float = 1.0) -> list[list[int]]:
    rng = random.Random(seed)
    return [[rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(cols)] for _ in range(rows)]


def workloads():
    yield from oracle_matrices(15, "xi + xi^3")
    yield from oracle_matrices(21, "xi + xi^7")
    yield from oracle_matrices(35, "xi + xi^5")
    for size in (50, 100, 200):
        yield f"random sparse {size}x{size}, entries +-1", random_matrix(size, size, 1, size, 0.05), size
    # determinants this large overflow 64 bits: the compiled kernel declines
    yield "random dense 30x30, entries in [-9, 9]", random_matrix(30, 30, 9, 30), 30


def time_kernel(kernel, rows, ncols, repeat: int) -> float:
    timer = timeit.Timer(lambda: kernel(rows, ncols, True, True))
    return min(timer.repeat(repeat=repeat, number=1))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", help="also write results to this file")
    args = ap.parse_args(argv)

    if not abelian.has_compiled_kernel():
        print("compiled kernel not built; run `pip install -e . --no-build-isolation` with Cython available")
        return 1
    from bredon import _snf_core

    results = []
    print(f"{'workload':40} {'shape':>9} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for name, rows, ncols in workloads():
        want = _snf_py.smith(rows, ncols, True, True)
        try:
            got = _snf_core.smith(rows, ncols, True, True)
        except OverflowError:
            got = None
        if got is not None and got != want:
            print(f"{name}: kernels disagree", file=sys.stderr)
            return 2
        t_py = time_kernel(_snf_py.smith, rows, ncols, args.repeat)
        shape = f"{len(rows)}x{ncols}"
        if got is None:
            print(f"{name:40} {shape:>9} {t_py:10.4f} {'fallback':>11} {'-':>8}")
            results.append({"workload": name, "shape": shape, "python_s": t_py, "compiled_s": None})
            continue
        t_c = time_kernel(_snf_core.smith, rows, ncols, args.repeat)
        print(f"{name:40} {shape:>9} {t_py:10.4f} {t_c:11.4f} {t_py / t_c:7.1f}x")
        results.append({"workload": name, "shape": shape, "python_s": t_py, "compiled_s": t_c})
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(results, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
