"""Compiled vs pure-Python term kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Part one times each kernel on random polynomials of growing size.  Part two
runs the Hopf-relation suite end to end under each backend in a fresh
interpreter, since caches would otherwise be shared.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from vermahom import _kernels_py as py
from vermahom.ring import LaurentPoly, VariableSet

try:
    from vermahom import _kernels as cy
except ImportError:
    cy = None

VS = VariableSet.colored(3)


def rand_poly(rng, size, spread):
    return LaurentPoly.from_exponents(
        VS, [([rng.randrange(-spread, spread + 1) for _ in VS.names], rng.randrange(-999, 1000) or 1)
             for _ in range(size)])


def kernel_cases(size, rng):
    a, b = rand_poly(rng, size, 8), rand_poly(rng, max(2, size // 4), 3)
    prod = a * b
    (amin, amax), (bmin, bmax) = prod.exponent_bounds(), b.exponent_bounds()
    lo = VS.pack([x - y for x, y in zip(amin, bmin)])
    hi = VS.pack([x - y for x, y in zip(amax, bmax)])
    return {
        "add": lambda m: m.add_terms(a._t, b._t),
        "mul": lambda m: m.mul_terms(a._t, b._t, VS.corr),
        "div": lambda m: m.div_terms(prod._t, b._t, VS.corr, lo, hi),
    }


def bench_kernels(repeat):
    rng = random.Random(0)
    print(f"{'kernel':6} {'terms':>6} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for size in (10, 100, 400):
        for name, fn in kernel_cases(size, rng).items():
            number = max(1, 2000 // size)
            t_py = min(timeit.repeat(lambda: fn(py), number=number, repeat=repeat)) / number
            if cy is None:
                print(f"{name:6} {size:6d} {t_py * 1e3:10.3f} {'n/a':>10}")
                continue
            t_cy = min(timeit.repeat(lambda: fn(cy), number=number, repeat=repeat)) / number
            print(f"{name:6} {size:6d} {t_py * 1e3:10.3f} {t_cy * 1e3:10.3f} {t_py / t_cy:7.2f}x")


def bench_suite():
    code = ("import time, vermahom; from vermahom.checks import hopf_suite; t = time.perf_counter(); "
            "ok = all(o.ok for o in hopf_suite(3, 4)); "
            "print(vermahom.BACKEND, ok, f'{time.perf_counter() - t:.2f}')")
    print("\nhopf suite n<=3, r<=4 (fresh interpreter each)")
    for pure in ("0", "1"):
        env = dict(os.environ, VH_PURE=pure)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        backend, ok, secs = out.stdout.split()
        print(f"  {backend:7} passed={ok:5} {secs}s")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    bench_kernels(args.repeat)
    bench_suite()


if __name__ == "__main__":
    main()
