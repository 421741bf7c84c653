#!/usr/bin/env python3
"""Mean output SNR against theta for the standard test signals.

Noise realizations are shared across theta values, so differences between
rows of one (signal, snr) group come from theta alone.

    python scripts/theta_denoise_study.py --length 6561 --levels 4 --out theta_snr.csv
"""

import argparse
from collections import defaultdict

from vpwave.cli import sweep_denoise

ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
ap.add_argument("--signals", default="blocks,bumps,heavy_sine,doppler,quadchirp,mishmash")
ap.add_argument("--length", type=int, default=6561)
ap.add_argument("--levels", type=int, default=4)
ap.add_argument("--snr", default="5,10,15")
ap.add_argument("--trials", type=int, default=10)
ap.add_argument("--seed", type=int, default=6)
ap.add_argument("--out", default="theta_snr.csv")
a = ap.parse_args()

signals = [s for s in a.signals.split(",") if s]
snrs = [float(s) for s in a.snr.split(",")]
thetas = [k / 10 for k in range(1, 10)]
rows = sweep_denoise(signals, a.length, a.levels, snrs, thetas, a.trials, a.seed)

with open(a.out, "w") as fh:
    fh.write("signal,input_snr_db,theta,mean_output_snr_db,std_output_snr_db\n")
    for r in rows:
        fh.write(",".join(str(x) for x in r) + "\n")

best = defaultdict(lambda: (None, -1e9))
at01 = {}
for s, i, t, m, _ in rows:
    if m > best[(s, i)][1]:
        best[(s, i)] = (t, m)
    if t == 0.1:
        at01[(s, i)] = m
for key, (t, m) in best.items():
    print(f"{key[0]:>10} {key[1]:4.0f} dB  best theta {t:.1f} ({m:.2f} dB), theta 0.1 gives {at01[key]:.2f} dB")
