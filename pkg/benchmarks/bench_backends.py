"""Compare the compiled kernels with the numpy fallback.

Run with ``python benchmarks/bench_backends.py``.  Each workload is timed
with :mod:`timeit` (best of ``--repeat`` runs) on both backends, and the
results are checked to agree before timing.
"""
import argparse
import timeit

import numpy as np

from slabeig import _backend
from slabeig.grid import partition
from slabeig.potentials import harmonic


def workloads():
    disc = partition(harmonic(-10, 10), 2000)
    energies = np.arange(0.0, 14.0, 0.005)
    x, h = np.linspace(-10, 10, 4001, retstep=True)
    diag = 2.0 / h**2 + x[1:-1] ** 2
    off_sq = np.full(diag.size - 1, 1.0 / h**4)
    shifts = np.linspace(0.0, 20.0, 64)
    return {
        "shoot_many (n=2000, 2800 energies)": lambda k: k.shoot_many(disc.samples, disc.h, energies, True),
        "quantify_one (n=2000, 50 energies)": lambda k: [k.quantify_one(disc.samples, disc.h, E) for E in energies[:50]],
        "propagate (n=2000, 50 energies)": lambda k: [k.propagate(disc.samples, disc.h, E) for E in energies[:50]],
        "sturm_counts (3999 rows, 64 shifts)": lambda k: k.sturm_counts(diag, off_sq, shifts),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = _backend.available()
    if "compiled" not in backends:
        print("compiled kernels not built; only the numpy fallback is available")
    names = sorted(backends)
    print(f"{'workload':40s}" + "".join(f"{n:>12s}" for n in names) + (f"{'speedup':>10s}" if len(names) == 2 else ""))
    for label, fn in workloads().items():
        times = {}
        for name in names:
            kern = backends[name]
            fn(kern)
            times[name] = min(timeit.repeat(lambda: fn(kern), number=1, repeat=args.repeat))
        row = f"{label:40s}" + "".join(f"{times[n] * 1e3:10.1f}ms" for n in names)
        if len(names) == 2:
            row += f"{times['python'] / times['compiled']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
