"""Timing comparison of the compiled mod-p kernels against the fallback.

Two sections: raw `rref_mod` timings on random square matrices, with both
implementations loaded side by side, and one full modular exponent scan in
fresh interpreters, once per implementation.  Run from the repository root:

    python3 benchmarks/bench_kernels.py
"""

import os
import subprocess
import sys
import time

import numpy as np

from logderiv import _kernels
from logderiv.linalg import default_primes

SCAN_SNIPPET = (
    "import time; "
    "from logderiv.arrangement import cone; "
    "from logderiv.dermod import min_generators; "
    "from logderiv.fixtures import load_fixture; "
    "from logderiv import _kernels; "
    "t0 = time.perf_counter(); "
    "g = min_generators(cone(load_fixture('ziegler_a1.arr')), 'D0'); "
    "label = 'compiled' if _kernels.HAVE_COMPILED else 'fallback'; "
    "print(f'{label}: exp0 {g.exp} in {time.perf_counter() - t0:.2f}s')"
)


def implementations():
    from logderiv._kernels import _modred_py

    impls = [("fallback", _modred_py)]
    if _kernels.HAVE_COMPILED:
        from logderiv._kernels import _modred

        impls.insert(0, ("compiled", _modred))
    return impls


def bench_rref() -> None:
    p = default_primes(None, 1)[0]
    impls = implementations()
    rng = np.random.default_rng(7)
    print(f"rref_mod, prime {p}")
    print(f"{'size':>10}" + "".join(f"{name:>12}" for name, _ in impls))
    for size in (100, 200, 400, 800):
        mat = rng.integers(0, p, size=(size, size), dtype=np.int64)
        cells = []
        for _name, impl in impls:
            runs = []
            for _ in range(3):
                work = mat.copy()
                t0 = time.perf_counter()
                impl.rref_mod(work, p)
                runs.append(time.perf_counter() - t0)
            cells.append(f"{min(runs) * 1000:9.1f}ms")
        print(f"{size:>5}x{size:<4}" + "".join(f"{c:>12}" for c in cells))


def bench_scan() -> None:
    print("\nfull modular scan of a 10-hyperplane cone, fresh process each:")
    for force in ("0", "1"):
        env = dict(os.environ, LOGDERIV_FORCE_FALLBACK=force)
        out = subprocess.run(
            [sys.executable, "-c", SCAN_SNIPPET],
            env=env,
            capture_output=True,
            text=True,
        )
        line = out.stdout.strip() or out.stderr.strip().splitlines()[-1]
        print(f"  {line}")


if __name__ == "__main__":
    bench_rref()
    if not _kernels.HAVE_COMPILED:
        print("compiled extension not importable here; fallback only")
    bench_scan()
