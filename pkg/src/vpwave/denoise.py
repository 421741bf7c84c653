"""Wavelet-domain denoising with per-band Bayes soft thresholding.

Pipeline: multilevel VP decomposition, optional division by calibrated
per-band factors, noise sigma from the finest detail band (MAD / 0.6745),
a BayesShrink threshold per detail band, soft shrinkage, then the inverse.
The coarse band is never thresholded.

Randomness (calibration, experiments) comes from ``numpy.random.PCG64``
streams spawned from one ``SeedSequence``; trial i always uses child i, so
results do not depend on how trials are scheduled across workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .formats import FormatError
from .mra1d import Pyramid1D, attainable_levels, decompose_multi, reconstruct_multi

__all__ = [
    "MAD_CONSTANT",
    "CalibrationTable",
    "DenoiseConfig",
    "soft_threshold",
    "estimate_noise_sigma",
    "bayes_threshold",
    "trial_rngs",
    "calibrate_factors",
    "threshold_pyramid",
    "denoise_signal",
    "snr",
    "read_calibration",
    "write_calibration",
]

MAD_CONSTANT = 0.6745


@dataclass(frozen=True)
class CalibrationTable:
    theta: float
    signal_length: int
    levels: int
    factors: tuple  # detail bands finest first, then coarse
    trials: int
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(float(f) for f in self.factors))
        if len(self.factors) != self.levels + 1:
            raise ValueError(f"need {self.levels + 1} factors, got {len(self.factors)}")
        if any(not f > 0 for f in self.factors):
            raise ValueError("calibration factors must be positive")


@dataclass
class DenoiseConfig:
    theta: float = 0.1
    levels: int = 8
    threshold_rule: str = "bayes_soft"
    pad_mode: str = "replicate"
    calibration: CalibrationTable | None = field(default=None)

    def __post_init__(self):
        if not 0.0 < self.theta < 1.0:
            raise ValueError(f"theta must lie in (0, 1), got {self.theta}")
        if self.threshold_rule != "bayes_soft":
            raise ValueError(f"unsupported threshold rule {self.threshold_rule!r}")
        if self.levels < 1:
            raise ValueError("levels must be >= 1")


def soft_threshold(x, lam):
    """sign(x) * max(|x| - lam, 0)."""
    if np.any(np.asarray(lam) < 0):
        raise ValueError("threshold must be nonnegative")
    x = np.asarray(x, dtype=float)
    out = np.sign(x) * np.maximum(np.abs(x) - lam, 0.0)
    return out.item() if out.ndim == 0 else out


def estimate_noise_sigma(finest_detail) -> float:
    d = np.asarray(finest_detail, dtype=float)
    if d.size == 0:
        raise ValueError("empty detail band")
    return float(np.median(np.abs(d)) / MAD_CONSTANT)


def bayes_threshold(band, sigma: float) -> float:
    """BayesShrink: sigma^2 / sigma_x with sigma_x^2 = max(mean(band^2) - sigma^2, 0).

    If the band carries no signal energy above the noise, the threshold is
    max |band| so the whole band is zeroed.
    """
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    band = np.asarray(band, dtype=float)
    if sigma == 0:
        return 0.0
    sx2 = max(float(np.mean(band**2)) - sigma**2, 0.0)
    if sx2 <= 0:
        return float(np.max(np.abs(band))) if band.size else 0.0
    return sigma**2 / math.sqrt(sx2)


def trial_rngs(seed: int, trials: int):
    return [np.random.Generator(np.random.PCG64(s)) for s in np.random.SeedSequence(seed).spawn(trials)]


def _band_stds(rng, length, theta, levels):
    p = decompose_multi(rng.standard_normal(length), theta, levels)
    return [float(np.std(b)) for b in p.bands()]


def calibrate_factors(length: int, theta: float, levels: int, trials: int = 1000, seed: int = 0,
                      workers: int = 1) -> CalibrationTable:
    """Average per-band standard deviation of decomposed N(0, 1) noise."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    depth = attainable_levels(length, levels)
    if depth == 0:
        raise ValueError(f"length {length} is too short to decompose")
    rngs = trial_rngs(seed, trials)

    def run(rng):
        return _band_stds(rng, length, theta, depth)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            stds = list(pool.map(run, rngs))
    else:
        stds = [run(r) for r in rngs]
    factors = np.mean(np.array(stds), axis=0)
    return CalibrationTable(float(theta), int(length), depth, tuple(factors), int(trials), int(seed))


def threshold_pyramid(p: Pyramid1D, factors=None) -> Pyramid1D:
    """Soft-threshold every detail band of ``p``; ``factors`` normalize bands first."""
    bands = p.bands()
    if factors is None:
        factors = [1.0] * len(bands)
    if len(factors) != len(bands):
        raise ValueError(f"{len(factors)} calibration factors for {len(bands)} bands")
    normed = [b / f for b, f in zip(bands, factors)]
    sigma = estimate_noise_sigma(normed[0])
    out = [soft_threshold(b, bayes_threshold(b, sigma)) for b in normed[:-1]]
    out.append(normed[-1])
    return p.with_bands([b * f for b, f in zip(out, factors)])


def denoise_signal(y, cfg: DenoiseConfig | None = None) -> np.ndarray:
    cfg = cfg or DenoiseConfig()
    y = np.asarray(y, dtype=float)
    p = decompose_multi(y, cfg.theta, cfg.levels, cfg.pad_mode)
    factors = None
    if cfg.calibration is not None:
        cal = cfg.calibration
        if cal.levels != p.levels:
            raise ValueError(f"calibration has {cal.levels} levels, decomposition has {p.levels}")
        factors = cal.factors
    return reconstruct_multi(threshold_pyramid(p, factors))


def snr(reference, other) -> float:
    """10 log10(var(reference) / var(reference - other)); inf when they match."""
    reference = np.asarray(reference, dtype=float)
    other = np.asarray(other, dtype=float)
    if reference.shape != other.shape:
        raise ValueError(f"shape mismatch {reference.shape} vs {other.shape}")
    noise = np.var(reference - other)
    if noise == 0:
        return math.inf
    return float(10 * np.log10(np.var(reference) / noise))


def write_calibration(path, table: CalibrationTable) -> None:
    lines = [
        f"# theta={table.theta!r}",
        f"# length={table.signal_length}",
        f"# levels={table.levels}",
        f"# trials={table.trials}",
        f"# seed={table.seed}",
        "band_index,factor",
    ]
    lines += [f"{i},{f!r}" for i, f in enumerate(table.factors)]
    Path(path).write_text("\n".join(lines) + "\n")


def read_calibration(path) -> CalibrationTable:
    meta, rows = {}, []
    seen_header = False
    offset = 0
    for line in Path(path).read_bytes().split(b"\n"):
        text = line.decode("ascii", errors="replace").strip()
        try:
            if text.startswith("#"):
                key, _, val = text[1:].partition("=")
                meta[key.strip()] = val.strip()
            elif text == "band_index,factor":
                seen_header = True
            elif text:
                idx, val = text.split(",")
                rows.append((int(idx), float(val)))
        except ValueError:
            raise FormatError(f"bad calibration line {text[:40]!r}", offset) from None
        offset += len(line) + 1
    missing = {"theta", "length", "levels", "trials", "seed"} - meta.keys()
    if missing or not seen_header:
        raise FormatError(f"calibration file missing {sorted(missing) or 'header row'}", 0)
    rows.sort()
    if [i for i, _ in rows] != list(range(len(rows))):
        raise FormatError("band indices must be 0..levels contiguous", 0)
    return CalibrationTable(float(meta["theta"]), int(meta["length"]), int(meta["levels"]),
                            tuple(f for _, f in rows), int(meta["trials"]), int(meta["seed"]))
