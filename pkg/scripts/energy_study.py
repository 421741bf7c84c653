#!/usr/bin/env python3
"""Total squared band norm of decomposed unit-energy noise, per depth and theta.

Two estimates are written side by side: the Monte-Carlo mean over random
unit vectors and the exact expectation trace(W^T W) / N, obtained by
pushing the identity matrix through the transform (rows are batched).

    python scripts/energy_study.py --out energy.csv
"""

from __future__ import annotations

import argparse
import warnings
from dataclasses import dataclass

import numpy as np

from vpwave.denoise import trial_rngs
from vpwave.mra1d import decompose_multi


@dataclass
class EnergyConfig:
    length: int = 3**7
    thetas: tuple = (0.1, 0.3, 0.5, 0.8)
    max_depth: int = 6
    trials: int = 100
    seed: int = 4


def band_energy(p):
    return np.sum([np.sum(b**2, axis=-1) for b in p.bands()], axis=0)


def exact_mean_energy(length, theta, depth, factors=None):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        p = decompose_multi(np.eye(length), theta, depth, factors=factors)
    return float(np.mean(band_energy(p)))


def monte_carlo_energy(length, theta, depth, trials, seed, factors=None):
    V = np.stack([r.standard_normal(length) for r in trial_rngs(seed, trials)])
    V /= np.linalg.norm(V, axis=1, keepdims=True)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        p = decompose_multi(V, theta, depth, factors=factors)
    e = band_energy(p)
    return float(np.mean(e)), float(np.std(e))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--length", type=int, default=EnergyConfig.length)
    ap.add_argument("--trials", type=int, default=EnergyConfig.trials)
    ap.add_argument("--max-depth", type=int, default=EnergyConfig.max_depth)
    ap.add_argument("--seed", type=int, default=EnergyConfig.seed)
    ap.add_argument("--out", default="energy.csv")
    a = ap.parse_args()
    cfg = EnergyConfig(a.length, EnergyConfig.thetas, a.max_depth, a.trials, a.seed)

    lines = ["theta,depth,factors,mc_mean,mc_std,exact_mean"]
    for theta in cfg.thetas:
        for depth in range(1, cfg.max_depth + 1):
            for label, fac in (("analytic", None), ("unit", [(1.0, 1.0)] * depth)):
                mc, sd = monte_carlo_energy(cfg.length, theta, depth, cfg.trials, cfg.seed, fac)
                ex = exact_mean_energy(cfg.length, theta, depth, fac)
                lines.append(f"{theta},{depth},{label},{mc:.6f},{sd:.6f},{ex:.6f}")
                print(lines[-1])
    with open(a.out, "w") as fh:
        fh.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
