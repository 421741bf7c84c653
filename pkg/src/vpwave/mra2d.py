"""Tensor-product VP transform for images.

One level splits an N x M matrix (padded to 3N1 x 3M1) into

    A: N1 x M1     (scaling along columns and rows)
    H: 2N1 x M1    (detail along columns, scaling along rows)
    V: N1 x 2M1    (scaling along columns, detail along rows)
    D: 2N1 x 2M1   (detail along both)

so the element count 9 N1 M1 of the padded input is preserved.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .mra1d import F_SCA, F_WAV, MIN_LENGTH, PAD_MODES, attainable_levels, decompose_any, reconstruct_any

__all__ = [
    "QuadBands",
    "LevelMeta2D",
    "Pyramid2D",
    "decompose2d",
    "reconstruct2d",
    "decompose2d_multi",
    "reconstruct2d_multi",
]


@dataclass
class QuadBands:
    A: np.ndarray
    H: np.ndarray
    V: np.ndarray
    D: np.ndarray
    theta: float
    pad_rows: int = 0
    pad_cols: int = 0
    pad_mode: str = "replicate"
    f_sca: float = F_SCA
    f_wav: float = F_WAV

    def __post_init__(self):
        N1, M1 = np.shape(self.A)
        expect = {"H": (2 * N1, M1), "V": (N1, 2 * M1), "D": (2 * N1, 2 * M1)}
        for name, shape in expect.items():
            if np.shape(getattr(self, name)) != shape:
                raise ValueError(f"band {name} has shape {np.shape(getattr(self, name))}, expected {shape}")

    @property
    def padded_shape(self):
        N1, M1 = self.A.shape
        return 3 * N1, 3 * M1

    @property
    def shape(self):
        N, M = self.padded_shape
        return N - self.pad_rows, M - self.pad_cols


def _split_axis(I, axis, theta, mode, f_sca, f_wav):
    moved = np.moveaxis(I, axis, -1)
    u, w, pad = decompose_any(moved, theta, mode, f_sca, f_wav)
    return np.moveaxis(u, -1, axis), np.moveaxis(w, -1, axis), pad


def _merge_axis(u, w, axis, theta, pad, f_sca, f_wav):
    out = reconstruct_any(np.moveaxis(u, axis, -1), np.moveaxis(w, axis, -1), theta, f_sca, f_wav)
    if pad:
        out = out[..., : out.shape[-1] - pad]
    return np.moveaxis(out, -1, axis)


def decompose2d(I, theta: float, mode: str = "replicate", f_sca: float = F_SCA, f_wav: float = F_WAV,
                columns_first: bool = True) -> QuadBands:
    """One tensor-product level: columns are split, then rows of each part.

    With ``columns_first=False`` the passes run in the other order; the bands
    agree up to rounding, since both passes are separable linear maps.
    """
    I = np.asarray(I, dtype=float)
    if I.ndim != 2 or min(I.shape) < MIN_LENGTH:
        raise ValueError(f"need a 2D array with both sides >= {MIN_LENGTH}, got {I.shape}")
    if mode not in PAD_MODES:
        raise ValueError(f"unknown pad mode {mode!r}")
    first, second = (0, 1) if columns_first else (1, 0)
    lo, hi, pad_first = _split_axis(I, first, theta, mode, f_sca, f_wav)
    lolo, lohi, pad_second = _split_axis(lo, second, theta, mode, f_sca, f_wav)
    hilo, hihi, _ = _split_axis(hi, second, theta, mode, f_sca, f_wav)
    if columns_first:
        A, H, V, D = lolo, hilo, lohi, hihi
        pad_rows, pad_cols = pad_first, pad_second
    else:
        A, H, V, D = lolo, lohi, hilo, hihi
        pad_rows, pad_cols = pad_second, pad_first
    return QuadBands(A, H, V, D, float(theta), pad_rows, pad_cols, mode, f_sca, f_wav)


def reconstruct2d(q: QuadBands) -> np.ndarray:
    """Invert :func:`decompose2d` (rows first, then columns) and drop padding."""
    for name in "AHVD":
        if np.ndim(getattr(q, name)) != 2:
            raise ValueError(f"band {name} must be 2D")
    q.__post_init__()
    lo = _merge_axis(q.A, q.V, 1, q.theta, q.pad_cols, q.f_sca, q.f_wav)
    hi = _merge_axis(q.H, q.D, 1, q.theta, q.pad_cols, q.f_sca, q.f_wav)
    return _merge_axis(lo, hi, 0, q.theta, q.pad_rows, q.f_sca, q.f_wav)


@dataclass(frozen=True)
class LevelMeta2D:
    pad_rows: int
    pad_cols: int
    pad_mode: str = "replicate"
    f_sca: float = F_SCA
    f_wav: float = F_WAV


@dataclass
class Pyramid2D:
    levels: list  # (H, V, D) triples, finest first
    coarse: np.ndarray
    theta: float
    level_meta: list = field(default_factory=list)
    original_dims: tuple = (0, 0)

    @property
    def depth(self) -> int:
        return len(self.levels)

    def bands(self):
        """Coarse band, then details coarsest level first, H, V, D within a level."""
        out = [self.coarse]
        for H, V, D in reversed(self.levels):
            out.extend([H, V, D])
        return out

    def with_bands(self, bands) -> Pyramid2D:
        bands = list(bands)
        coarse, rest = bands[0], bands[1:]
        trip = [tuple(rest[i : i + 3]) for i in range(0, len(rest), 3)]
        return Pyramid2D(trip[::-1], coarse, self.theta, list(self.level_meta), tuple(self.original_dims))

    def total_coefficients(self) -> int:
        return int(sum(np.size(b) for b in self.bands()))


def decompose2d_multi(I, theta: float, levels: int, mode: str = "replicate") -> Pyramid2D:
    if levels < 1:
        raise ValueError("levels must be >= 1")
    I = np.asarray(I, dtype=float)
    if I.ndim != 2:
        raise ValueError("expected a 2D array")
    depth = min(attainable_levels(I.shape[0], levels), attainable_levels(I.shape[1], levels))
    if depth == 0:
        raise ValueError(f"image of shape {I.shape} is too small to decompose")
    if depth < levels:
        warnings.warn(f"requested {levels} levels, only {depth} attainable for shape {I.shape}", stacklevel=2)
    trip, meta = [], []
    cur = I
    for _ in range(depth):
        q = decompose2d(cur, theta, mode)
        trip.append((q.H, q.V, q.D))
        meta.append(LevelMeta2D(q.pad_rows, q.pad_cols, mode, q.f_sca, q.f_wav))
        cur = q.A
    return Pyramid2D(trip, cur, float(theta), meta, tuple(int(s) for s in I.shape))


def reconstruct2d_multi(p: Pyramid2D) -> np.ndarray:
    if len(p.levels) != len(p.level_meta) or not p.levels:
        raise ValueError("pyramid has inconsistent level metadata")
    cur = np.asarray(p.coarse, dtype=float)
    for (H, V, D), meta in zip(reversed(p.levels), reversed(p.level_meta)):
        H = np.asarray(H, dtype=float)
        N1, M1 = H.shape[0] // 2, H.shape[1]
        if cur.shape[0] < N1 or cur.shape[1] < M1:
            raise ValueError(f"scaling band {cur.shape} smaller than detail level needs ({N1}, {M1})")
        q = QuadBands(cur[:N1, :M1], H, np.asarray(V, float), np.asarray(D, float), p.theta,
                      meta.pad_rows, meta.pad_cols, meta.pad_mode, meta.f_sca, meta.f_wav)
        cur = reconstruct2d(q)
    if tuple(cur.shape) != tuple(p.original_dims):
        raise ValueError(f"reconstructed shape {cur.shape} != original {p.original_dims}")
    return cur
