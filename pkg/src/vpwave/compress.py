"""Compressibility of images under the 2D VP transform.

"Compression" here means keeping the largest P percent of all stored
coefficients (coarse band included) and measuring what survives; there is
no quantization or entropy coding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.ndimage import gaussian_filter

from .mra2d import Pyramid2D, decompose2d_multi, reconstruct2d_multi

__all__ = [
    "CompressionReport",
    "retained_count",
    "keep_fraction",
    "psnr",
    "ssim",
    "ssim_map",
    "sorted_detail_magnitudes",
    "compress_image",
    "METRICS_HEADER",
]

METRICS_HEADER = "image,theta,levels,cr,fraction,psnr_db,ssim"


@dataclass
class CompressionReport:
    cr: float
    retained_fraction: float
    psnr_db: float
    ssim: float
    levels: int
    theta: float
    nonzero_counts: list = field(default_factory=list)
    image: str = ""

    def csv_row(self) -> str:
        return ",".join([
            self.image,
            repr(self.theta),
            str(self.levels),
            repr(self.cr),
            repr(self.retained_fraction),
            repr(self.psnr_db),
            repr(self.ssim),
        ])


def retained_count(fraction: float, image_size: int) -> int:
    """round(fraction * image_size), halves rounded up."""
    return int(math.floor(fraction * image_size + 0.5))


def keep_fraction(p: Pyramid2D, fraction: float) -> Pyramid2D:
    """Zero all but the K = round(fraction * N * M) largest-magnitude coefficients.

    The budget is counted against the original image size, but candidates are
    all stored coefficients, coarse band included. Ties at the cut go to the
    earlier band in ``p.bands()`` order (coarse, then coarser-to-finer
    levels, H, V, D), row-major within a band. ``fraction == 1`` keeps
    everything, padding coefficients included.
    """
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must lie in (0, 1], got {fraction}")
    bands = [np.asarray(b, dtype=float) for b in p.bands()]
    if fraction == 1.0:
        return p.with_bands([b.copy() for b in bands])
    flat = np.concatenate([b.ravel() for b in bands])
    K = retained_count(fraction, int(np.prod(p.original_dims)))
    order = np.argsort(-np.abs(flat), kind="stable")
    mask = np.zeros(flat.size, dtype=bool)
    mask[order[:K]] = True
    kept = np.where(mask, flat, 0.0)
    out, pos = [], 0
    for b in bands:
        out.append(kept[pos : pos + b.size].reshape(b.shape))
        pos += b.size
    return p.with_bands(out)


def psnr(I, J, peak: float = 255.0) -> float:
    I = np.asarray(I, dtype=float)
    J = np.asarray(J, dtype=float)
    if I.shape != J.shape:
        raise ValueError(f"shape mismatch {I.shape} vs {J.shape}")
    if peak <= 0:
        raise ValueError("peak must be positive")
    mse = float(np.mean((I - J) ** 2))
    if mse == 0:
        return math.inf
    return 10 * math.log10(peak**2 / mse)


def ssim_map(I, J, dynamic_range: float = 255.0, k1: float = 0.01, k2: float = 0.03, sigma: float = 1.5):
    """Local SSIM with an 11 x 11 Gaussian window and symmetric boundaries."""
    I = np.asarray(I, dtype=float)
    J = np.asarray(J, dtype=float)
    if I.shape != J.shape:
        raise ValueError(f"shape mismatch {I.shape} vs {J.shape}")
    if I.ndim != 2 or min(I.shape) < 11:
        raise ValueError(f"SSIM needs 2D images of at least 11 x 11, got {I.shape}")
    if dynamic_range <= 0:
        raise ValueError("dynamic_range must be positive")

    # radius int(3.5 * 1.5 + 0.5) = 5 -> 11 taps; 'reflect' is the symmetric rule
    def blur(x):
        return gaussian_filter(x, sigma, mode="reflect", truncate=3.5)

    c1 = (k1 * dynamic_range) ** 2
    c2 = (k2 * dynamic_range) ** 2
    mu_i, mu_j = blur(I), blur(J)
    s_ii = blur(I * I) - mu_i * mu_i
    s_jj = blur(J * J) - mu_j * mu_j
    s_ij = blur(I * J) - mu_i * mu_j
    num = (2 * mu_i * mu_j + c1) * (2 * s_ij + c2)
    den = (mu_i * mu_i + mu_j * mu_j + c1) * (s_ii + s_jj + c2)
    return num / den


def ssim(I, J, dynamic_range: float = 255.0) -> float:
    return float(np.mean(ssim_map(I, J, dynamic_range)))


def sorted_detail_magnitudes(p: Pyramid2D, count: int) -> np.ndarray:
    if count < 1:
        raise ValueError("count must be >= 1")
    mags = np.concatenate([np.abs(np.asarray(b, dtype=float)).ravel() for trip in p.levels for b in trip])
    return -np.sort(-mags)[:count]


def compress_image(I, theta: float, levels: int, fraction: float, mode: str = "replicate",
                   peak: float = 255.0, quantize: bool | None = None, name: str = ""):
    """Decompose, keep a fraction of coefficients, reconstruct, clamp, and score.

    The reconstruction is clamped to [0, peak]; with ``quantize`` (default:
    when ``I`` has an integer dtype) it is also rounded to integers, as it
    would be when written back to an 8-bit file.
    """
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must lie in (0, 1], got {fraction}")
    I_arr = np.asarray(I)
    if quantize is None:
        quantize = np.issubdtype(I_arr.dtype, np.integer)
    ref = I_arr.astype(float)
    p = keep_fraction(decompose2d_multi(ref, theta, levels, mode), fraction)
    rec = np.clip(reconstruct2d_multi(p), 0.0, peak)
    if quantize:
        rec = np.rint(rec)
    report = CompressionReport(
        cr=1.0 / fraction,
        retained_fraction=fraction,
        psnr_db=psnr(ref, rec, peak),
        ssim=ssim(ref, rec, peak) if min(ref.shape) >= 11 else math.nan,
        levels=p.depth,
        theta=float(theta),
        nonzero_counts=[int(np.count_nonzero(b)) for b in p.bands()],
        image=name,
    )
    return rec, report
