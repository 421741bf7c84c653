#!/usr/bin/env python3
"""Time one decomposition level over growing N and fit the log-log slope.

A slope near 1 is what O(N log N) looks like over a few octaves; 2 would
mean a quadratic path slipped in.

    python scripts/bench_scaling.py --out bench.csv
"""

import argparse

import numpy as np

from vpwave.cli import BENCH_HEADER, bench_rows

ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
ap.add_argument("--sizes", default=",".join(str(3**k) for k in range(6, 14)))
ap.add_argument("--theta", type=float, default=0.5)
ap.add_argument("--levels", type=int, default=1)
ap.add_argument("--repeats", type=int, default=7)
ap.add_argument("--out", default="bench.csv")
a = ap.parse_args()

sizes = [int(s) for s in a.sizes.split(",")]
rows = bench_rows(sizes, a.theta, a.levels, a.repeats, seed=0)
with open(a.out, "w") as fh:
    fh.write(BENCH_HEADER + "\n")
    for r in rows:
        fh.write(",".join(str(x) for x in r) + "\n")

first = [(s, t) for s, lvl, _, _, t in rows if lvl == 1]
N = np.array([s for s, _ in first], float)
T = np.array([t for _, t in first])
for n, t in zip(N, T):
    print(f"N={int(n):>8}  {1e3 * t:9.3f} ms  {1e9 * t / (n * np.log(n)):7.2f} ns / (N log N)")
print(f"log-log slope {np.polyfit(np.log(N), np.log(T), 1)[0]:.3f}")
