"""Compare the compiled enumeration kernels against the pure-Python fallback.

Runs the counting and normalized-omega kernels on identical inputs through
both backends and reports wall times and the speedup.  The outputs are also
cross-checked, so this doubles as a quick backend-equality smoke test.

Usage: python benchmarks/bench_kernels.py [--x 3000000] [--field Qi] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from idealstats import _kernels_py
from idealstats.catalog import load_catalog
from idealstats.counting import subset_table
from idealstats.kernels import SUBSET_CODES

try:
    from idealstats import _kernels_cy
except ImportError:
    _kernels_cy = None


def best_of(fn, repeat: int) -> tuple[float, object]:
    best = float("inf")
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--field", default="Qi")
    ap.add_argument("--x", type=lambda s: int(float(s)), default=3_000_000)
    ap.add_argument("--subset", choices=sorted(SUBSET_CODES), default="all")
    ap.add_argument("--h", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    desc = load_catalog()[args.field]
    table = subset_table(desc, args.subset, args.h, args.x)
    norms = table.norm
    code = SUBSET_CODES[args.subset]
    print(f"field={args.field} subset={args.subset} h={args.h} x={args.x} "
          f"primes={len(norms)}")

    if _kernels_cy is None:
        print("compiled backend not built; only timing the pure fallback")

    for name, kernel in [("count", "count"), ("ek_z", "ek_z")]:
        def run(mod):
            if kernel == "count":
                return lambda: mod.count(norms, args.x, code, args.h)
            return lambda: mod.ek_z(norms, args.x, code, args.h)

        t_py, v_py = best_of(run(_kernels_py), args.repeat)
        line = f"{name:18s} python {t_py * 1e3:10.1f} ms"
        if _kernels_cy is not None:
            t_cy, v_cy = best_of(run(_kernels_cy), args.repeat)
            if kernel == "count":
                assert v_py == v_cy, (v_py, v_cy)
            else:
                assert np.array_equal(v_py, v_cy)
            line += f"   compiled {t_cy * 1e3:10.1f} ms   speedup {t_py / t_cy:6.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
