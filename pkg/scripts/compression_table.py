#!/usr/bin/env python3
"""PSNR / SSIM after one level at P = 50%, theta swept over [0.5, 0.8].

Pass image files (8-bit grayscale .pgm/.png); with none, a seeded synthetic
256 x 256 image is used so the script always runs.

    python scripts/compression_table.py lena.png peppers.png baboon.png
    python scripts/compression_table.py --levels 4 --keep 0.0625 img.pgm
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from vpwave.compress import METRICS_HEADER, compress_image
from vpwave.formats import read_image


@dataclass
class TableConfig:
    levels: int = 1
    keep: float = 0.5
    thetas: tuple = tuple(np.round(np.arange(0.5, 0.8001, 0.05), 2))


def synthetic(size=256, seed=8):
    rng = np.random.default_rng(seed)
    y, x = np.mgrid[0:size, 0:size] / size
    img = 90 + 70 * x + 35 * np.sin(7 * y) * np.cos(3 * x)
    img += 60 * ((x - 0.4) ** 2 + (y - 0.55) ** 2 < 0.05) - 40 * ((x > 0.7) & (y < 0.3))
    img += rng.normal(0, 5, img.shape)
    return np.clip(np.rint(img), 0, 255).astype(np.uint8)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("images", nargs="*")
    ap.add_argument("--levels", type=int, default=TableConfig.levels)
    ap.add_argument("--keep", type=float, default=TableConfig.keep)
    ap.add_argument("--out", default="compression_table.csv")
    a = ap.parse_args()
    cfg = TableConfig(a.levels, a.keep)

    images = [(Path(p).stem, read_image(p)) for p in a.images] or [("synthetic", synthetic())]
    lines = [METRICS_HEADER]
    for name, img in images:
        reps = [compress_image(img, float(t), cfg.levels, cfg.keep, name=name)[1] for t in cfg.thetas]
        lines += [r.csv_row() for r in reps]
        best = max(reps, key=lambda r: r.psnr_db)
        print(f"{name:>12}: best theta {best.theta:.2f}  PSNR {best.psnr_db:.3f} dB  SSIM {best.ssim:.4f}")
    Path(a.out).write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
