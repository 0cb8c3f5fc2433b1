"""Compiled vs pure-Python enumeration kernel.

    python benchmarks/bench_kernels.py [--repeat 5]

Times ``enumerate_block`` on random positive triangular forms of growing
dimension and bound, then one full h0 evaluation per backend (each in a
fresh interpreter so the backend switch takes effect).
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from arakelov_h0 import _kernels_py, kernels


def random_form(rng, m):
    diag = [rng.uniform(0.3, 1.5) for _ in range(m)]
    off = [[rng.uniform(-0.5, 0.5) if r > i else 0.0 for i in range(m)] for r in range(m)]
    return diag, off


H0_SNIPPET = """
import time
from arakelov_h0 import h0, kernels
from arakelov_h0.arakelov import ArakelovDivisor
from arakelov_h0.field import build_field
from arakelov_h0.ideals import unit_ideal
F = build_field([-1, -2, 1, 1])
W = ArakelovDivisor(unit_ideal(3), (-1.5, -1.0, -0.5))
t = time.perf_counter()
for _ in range(5):
    r = h0(W, 1e-10, F, split=False)
print(kernels.BACKEND, r.term_count, (time.perf_counter() - t) / 5)
"""


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = random.Random(0)
    print(f"compiled backend available: {kernels.BACKEND == 'cython'}")
    print(f"{'dim':>3} {'bound':>6} {'points':>8} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for m, bound in [(2, 20), (3, 20), (4, 15), (5, 12), (6, 10)]:
        diag, off = random_form(rng, m)
        n_pts = len(_kernels_py.enumerate_block(diag, off, bound))
        t_py = min(timeit.repeat(lambda: _kernels_py.enumerate_block(diag, off, bound), number=1, repeat=args.repeat))
        t_c = min(timeit.repeat(lambda: kernels.enumerate_block(diag, off, bound), number=1, repeat=args.repeat))
        print(f"{m:>3} {bound:>6} {n_pts:>8} {t_py * 1e3:>10.2f} {t_c * 1e3:>10.2f} {t_py / t_c:>8.1f}")

    print("\nend-to-end h0 (cubic field, plain path, delta 1e-10):")
    for pure in ("1", "0"):
        env = dict(os.environ, ARAKELOV_H0_PURE=pure)
        out = subprocess.run([sys.executable, "-c", H0_SNIPPET], env=env, capture_output=True, text=True, check=True)
        backend, terms, secs = out.stdout.split()
        print(f"  {backend:>7}: {float(secs) * 1e3:.1f} ms per h0 ({terms} terms)")


if __name__ == "__main__":
    main()
