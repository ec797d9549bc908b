"""Compare the compiled kernel backend against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--quick]

Micro section times the four hot kernels on randomized inputs with both
backends imported side by side.  End-to-end section reruns a fixed
character computation in a subprocess with QTCHAR_PURE_PYTHON toggled,
since the backend is chosen once at import.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time

from qtchar import _kernels_py

try:
    from qtchar import _kernels
except ImportError:
    _kernels = None


def _rand_mono(rng, size):
    keys = set()
    while len(keys) < size:
        keys.add((rng.randint(1, 4), rng.randint(-6, 14)))
    return tuple((i, s, rng.choice((-3, -2, -1, 1, 2, 3))) for i, s in sorted(keys))


def _rand_poly(rng, size):
    out = {}
    while len(out) < size:
        out[rng.randint(-12, 12)] = rng.choice((-5, -2, -1, 1, 2, 4))
    return out


def _rand_map(rng, size):
    out = {}
    while len(out) < size:
        out[(rng.randint(1, 4), rng.randint(-8, 16))] = rng.randint(-4, 4) or 1
    return out


def _workloads(rng, n):
    monos = [(_rand_mono(rng, 10), _rand_mono(rng, 12)) for _ in range(n)]
    polys = [(_rand_poly(rng, 12), _rand_poly(rng, 14)) for _ in range(n)]
    maps = [(_rand_map(rng, 30), _rand_map(rng, 24)) for _ in range(n)]
    return {
        "mono_mul": (lambda k, args: k.mono_mul(*args), monos),
        "poly_mul": (lambda k, args: k.poly_mul(*args), polys),
        "poly_acc_mul": (lambda k, args: k.poly_acc_mul(dict(args[0]), args[0], args[1], 3), polys),
        "dot_shifted": (lambda k, args: k.dot_shifted(args[0], args[1], 2), maps),
    }


def _time_kernel(run, kernel, cases, repeats):
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        for args in cases:
            run(kernel, args)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best / len(cases)


def micro(n, repeats):
    rng = random.Random(20240311)
    loads = _workloads(rng, n)
    print(f"micro ({n} cases per op, best of {repeats}):")
    print(f"  {'kernel':<14} {'python':>12} {'cython':>12} {'speedup':>9}")
    for name, (run, cases) in loads.items():
        py = _time_kernel(run, _kernels_py, cases, repeats)
        row = f"  {name:<14} {py * 1e9:>10.0f}ns"
        if _kernels is not None:
            cy = _time_kernel(run, _kernels, cases, repeats)
            row += f" {cy * 1e9:>10.0f}ns {py / cy:>8.1f}x"
        else:
            row += f" {'n/a':>12}"
        print(row)


END_TO_END = """
import time
from qtchar import DrinfeldPoly, Engine, build_lie_type, kernels
t0 = time.perf_counter()
eng = Engine(build_lie_type("D", 4))
eng.kr_char_direct(2, %d, 0)
eng2 = Engine(build_lie_type("A", 2))
eng2.kl_decompose(DrinfeldPoly.kr(1, 3, 0) * DrinfeldPoly.kr(1, 3, 2))
print(kernels.BACKEND, time.perf_counter() - t0)
"""


def end_to_end(k):
    print(f"end-to-end (D4 node-2 string character k={k} + A2 decomposition):")
    for pure in ("0", "1"):
        env = dict(os.environ, QTCHAR_PURE_PYTHON=pure)
        out = subprocess.run(
            [sys.executable, "-c", END_TO_END % k],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        backend, seconds = out.stdout.split()
        print(f"  {backend:<8} {float(seconds):.3f}s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true", help="smaller case counts")
    args = ap.parse_args()
    n, repeats = (200, 3) if args.quick else (2000, 5)
    if _kernels is None:
        print("compiled backend not available; timing fallback only")
    micro(n, repeats)
    end_to_end(3 if args.quick else 4)


if __name__ == "__main__":
    main()
