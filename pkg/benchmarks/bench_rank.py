"""Compare the numba and pure-numpy kernels.

Kernel timings call both implementations in this process.  The end-to-end
timing runs a small scan twice in subprocesses, once with PRESEKIT_NO_NUMBA=1.

    python3 benchmarks/bench_rank.py [--sizes 50,100,200] [--repeat 3]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from presekit import _kernels
from presekit.linalg import P_DEFAULT

WORKLOAD = "from presekit import config, complexgeo; complexgeo.scan(config.load('string3'), 2, seed=0)"


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def kernel_table(sizes, repeat: int) -> None:
    p = P_DEFAULT
    rng = np.random.default_rng(0)
    if _kernels.rref_numba is None:
        print("numba unavailable; kernel comparison skipped")
        return
    a0 = rng.integers(0, p, (8, 8), dtype=np.int64)
    _kernels.rref_numba(a0.copy(), p)
    _kernels.matmul_numba(a0, a0, p)
    print(f"{'n':>6} {'rref numpy':>12} {'rref numba':>12} {'matmul numpy':>13} {'matmul numba':>13}")
    for n in sizes:
        a = rng.integers(0, p, (n, n), dtype=np.int64)
        b = rng.integers(0, p, (n, n), dtype=np.int64)
        assert np.array_equal(_kernels.rref_numpy(a.copy(), p), _kernels.rref_numba(a.copy(), p))
        assert np.array_equal(_kernels.matmul_numpy(a, b, p), _kernels.matmul_numba(a, b, p))
        row = [best_of(lambda: _kernels.rref_numpy(a.copy(), p), repeat),
               best_of(lambda: _kernels.rref_numba(a.copy(), p), repeat),
               best_of(lambda: _kernels.matmul_numpy(a, b, p), repeat),
               best_of(lambda: _kernels.matmul_numba(a, b, p), repeat)]
        print(f"{n:>6} " + " ".join(f"{t:>12.4f}s" for t in row))


def end_to_end() -> None:
    for label, flag in (("numba", "0"), ("numpy", "1")):
        env = dict(os.environ, PRESEKIT_NO_NUMBA=flag)
        t = time.perf_counter()
        subprocess.run([sys.executable, "-c", WORKLOAD], env=env, check=True)
        print(f"scan string3 box 2, {label}: {time.perf_counter() - t:.2f}s (includes start-up and JIT)")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="50,100,200")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args()
    kernel_table([int(s) for s in args.sizes.split(",")], args.repeat)
    if not args.skip_end_to_end:
        end_to_end()


if __name__ == "__main__":
    main()
