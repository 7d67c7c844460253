"""Compare the compiled kernels against the pure-Python reference.

Usage: python3 benchmarks/bench_kernels.py [n] [pairs]
"""

from __future__ import annotations

import sys
import time

from meettree import random_tree
from meettree._kernels import _ref

try:
    from meettree._kernels import _fast
except ImportError:
    _fast = None


def bench(mod, par, dep, pairs):
    t0 = time.perf_counter()
    acc = 0
    for a, b in pairs:
        acc ^= mod.lca(par, dep, a, b)
    dt = time.perf_counter() - t0
    return dt, acc


def bench_closure(mod, par, dep, seed_sets):
    t0 = time.perf_counter()
    for seeds in seed_sets:
        mod.closure_set(par, dep, seeds)
    return time.perf_counter() - t0


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 200
    npairs = int(sys.argv[2]) if len(sys.argv) > 2 else 200_000
    import random

    rng = random.Random(0)
    par, dep = random_tree(n, 0)._arrays()
    pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(npairs)]
    seed_sets = [[rng.randrange(n) for _ in range(8)] for _ in range(2_000)]

    dt_ref, acc_ref = bench(_ref, par, dep, pairs)
    print(f"lca      python  {npairs} pairs on n={n}: {dt_ref:.3f}s")
    cl_ref = bench_closure(_ref, par, dep, seed_sets)
    print(f"closure  python  {len(seed_sets)} sets:          {cl_ref:.3f}s")
    if _fast is None:
        print("compiled kernels not built; set up with the default pip install")
        return
    dt_fast, acc_fast = bench(_fast, par, dep, pairs)
    assert acc_ref == acc_fast
    cl_fast = bench_closure(_fast, par, dep, seed_sets)
    print(f"lca      cython  {npairs} pairs on n={n}: {dt_fast:.3f}s  ({dt_ref / dt_fast:.1f}x)")
    print(f"closure  cython  {len(seed_sets)} sets:          {cl_fast:.3f}s  ({cl_ref / cl_fast:.1f}x)")


if __name__ == "__main__":
    main()
