"""Compare the numba and numpy backends of the finite-rack kernels.

Usage: python3 benchmarks/bench_kernels.py [--groups s4,s5,d8] [--repeat 5]

Each backend runs the full axiom scan, the associativity scan and the
identity-row scan on the conjugation rack of each group, then the batched
left-distributivity filter used by order-4 enumeration. Both backends must
return identical witnesses; timings are best-of-``repeat`` after one warm-up
call (which includes JIT compilation for numba).
"""

import argparse
import time

import numpy as np

from corack import _kernels as K
from corack.finite import conj_of_group, stock_group


def best_of(fn, repeat):
    fn()  # warm-up / compile
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def enumeration_batch():
    from itertools import permutations, product

    rows = [(0,) + p for p in sorted(permutations(range(1, 4)))]
    return np.array([[(0, 1, 2, 3), *c] for c in product(rows, repeat=3)], dtype=np.int64)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--groups", default="s4,d8,s5")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        print("numba unavailable (or CORACK_USE_NUMBA=0); only the numpy path runs")

    cases = []
    for name in args.groups.split(","):
        R = conj_of_group(stock_group(name))
        op, inv = R.arrays()
        cases.append((f"axioms {name} (n={R.size})", lambda u, op=op, inv=inv: K.axiom_witnesses(op, inv, 0, u)))
        cases.append((f"assoc  {name} (n={R.size})", lambda u, op=op: K.assoc_witness(op, u)))
        cases.append((f"center {name} (n={R.size})", lambda u, op=op: K.identity_rows(op, u)))
    batch = enumeration_batch()
    cases.append((f"enumerate n=4 ({len(batch)} tables)", lambda u: K.left_distributive_batch(batch, u)))

    print(f"{'kernel':<34}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for label, fn in cases:
        t_np = best_of(lambda: fn(False), args.repeat)
        if K.HAVE_NUMBA:
            assert np.array_equal(fn(False), fn(True)), label
            t_nb = best_of(lambda: fn(True), args.repeat)
            print(f"{label:<34}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}{t_np / t_nb:>9.1f}x")
        else:
            print(f"{label:<34}{t_np * 1e3:>12.3f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
