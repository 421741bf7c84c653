"""Ternary VP decomposition and reconstruction of 1D signals.

A signal v of length N is read as samples v_k = f(x_k^N) at the Chebyshev
zeros, i.e. as the scaling coefficients of V_N^m f. One level splits the
3n coefficients into n scaling and 2n detail coefficients.

All routines work along the last axis, so a stack of signals (for example
the columns of an image) is processed in one call.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cheb import y_node_indices
from .transforms import FoldSpec, _fold_table, t1, t2, t3, t4
from .vp_basis import ResolutionSpec

__all__ = [
    "F_SCA",
    "F_WAV",
    "PAD_MODES",
    "LevelMeta",
    "Pyramid1D",
    "decompose_classic",
    "reconstruct_classic",
    "pad_to_multiple_of_3",
    "decompose_any",
    "reconstruct_any",
    "decompose_multi",
    "reconstruct_multi",
    "attainable_levels",
]

F_SCA = math.sqrt(3.0)
F_WAV = math.sqrt(1.5)
PAD_MODES = ("replicate", "zeros")
MIN_LENGTH = 4  # pads to 6, n = 2 is the smallest level with 0 < m < n


def _spec_for(n, spec=None, theta=None):
    if spec is not None:
        if spec.n != n:
            raise ValueError(f"spec.n={spec.n} does not match n={n}")
        return spec
    if theta is None:
        raise ValueError("pass either spec or theta")
    return ResolutionSpec.from_theta(n, theta)


def _split(a3n):
    v = a3n[..., 1::3]
    u = a3n[..., y_node_indices(a3n.shape[-1] // 3)]
    return v, u


def _merge(x_part, y_part):
    n = x_part.shape[-1]
    out = np.empty(x_part.shape[:-1] + (3 * n,))
    out[..., 1::3] = x_part
    out[..., y_node_indices(n)] = y_part
    return out


def decompose_classic(a3n, spec: ResolutionSpec | None = None, *, theta: float | None = None):
    """One decomposition step on a length-3n coefficient vector.

    Returns ``(an, b2n)``. The detail band is the y-node part of the input
    minus the scaling part evaluated at the y-nodes, ``u - T4(v)``.
    """
    a3n = np.asarray(a3n, dtype=float)
    if a3n.ndim == 0 or a3n.shape[-1] % 3 or a3n.shape[-1] == 0:
        raise ValueError(f"decompose_classic needs a length divisible by 3, got {np.shape(a3n)}")
    n = a3n.shape[-1] // 3
    spec = _spec_for(n, spec, theta)
    fold = FoldSpec.of(spec)
    m = spec.m

    v, u = _split(a3n)
    x = np.pi / (3 * n) * t1(v)
    y = np.pi / (3 * n) * t3(u, fold)
    c = x + y
    rows, _, _, _ = _fold_table(n, m)
    j = n - rows  # n - k + 1 with k = rows + 1
    c[..., rows] *= 2.0 * m * m / (m * m + j * j)
    an = t2(c)
    b2n = u - t4(c, fold)
    return an, b2n


def reconstruct_classic(an, b2n, spec: ResolutionSpec | None = None, *, theta: float | None = None):
    """Inverse of :func:`decompose_classic`."""
    an = np.asarray(an, dtype=float)
    b2n = np.asarray(b2n, dtype=float)
    if an.ndim == 0 or b2n.shape[-1] != 2 * an.shape[-1] or an.shape[:-1] != b2n.shape[:-1]:
        raise ValueError(f"band lengths inconsistent: {np.shape(an)} vs {np.shape(b2n)}")
    n = an.shape[-1]
    spec = _spec_for(n, spec, theta)
    fold = FoldSpec.of(spec)
    x = np.pi / n * t1(an)
    y = np.pi / n * t3(b2n, fold)
    return _merge(an - t2(y), b2n + t4(x, fold))


def pad_to_multiple_of_3(v, mode: str = "replicate"):
    """Append 0-2 entries so the last axis is divisible by 3.

    ``replicate`` repeats the last entry, ``zeros`` appends zeros.
    Returns ``(padded, pad_count)``.
    """
    if mode not in PAD_MODES:
        raise ValueError(f"pad mode must be one of {PAD_MODES}, got {mode!r}")
    v = np.asarray(v, dtype=float)
    if v.ndim == 0:
        raise ValueError("cannot pad a scalar")
    pad = (-v.shape[-1]) % 3
    if pad == 0:
        return v, 0
    if v.shape[-1] == 0:
        raise ValueError("cannot pad an empty vector")
    if mode == "replicate":
        extra = np.repeat(v[..., -1:], pad, axis=-1)
    else:
        extra = np.zeros(v.shape[:-1] + (pad,))
    return np.concatenate([v, extra], axis=-1), pad


def decompose_any(v, theta: float, mode: str = "replicate", f_sca: float = F_SCA, f_wav: float = F_WAV):
    """Pad, run one classic step with m from theta, and apply the normalization factors.

    Returns ``(u, w, pad_count)`` with ``u = f_sca * a_n`` and ``w = f_wav * b_2n``.
    """
    v = np.asarray(v, dtype=float)
    if v.ndim == 0 or v.shape[-1] < MIN_LENGTH:
        raise ValueError(f"need at least {MIN_LENGTH} samples for one level, got {np.shape(v)}")
    padded, pad = pad_to_multiple_of_3(v, mode)
    an, b2n = decompose_classic(padded, theta=theta)
    return f_sca * an, f_wav * b2n, pad


def reconstruct_any(u, w, theta: float, f_sca: float = F_SCA, f_wav: float = F_WAV):
    """Undo :func:`decompose_any`; returns the (possibly padded) length-3n vector.

    Entries of ``u`` beyond ``len(w) / 2`` are padding from the next coarser
    level and are dropped.
    """
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float)
    if w.ndim == 0 or w.shape[-1] % 2:
        raise ValueError("detail vector must have even length")
    n = w.shape[-1] // 2
    if u.shape[-1] < n:
        raise ValueError(f"scaling vector of length {u.shape[-1]} is shorter than n={n}")
    return reconstruct_classic(u[..., :n] / f_sca, w / f_wav, theta=theta)


@dataclass(frozen=True)
class LevelMeta:
    """Per-level bookkeeping: padding added before the split and the factors used."""

    pad_count: int
    pad_mode: str = "replicate"
    f_sca: float = F_SCA
    f_wav: float = F_WAV

    def __post_init__(self):
        if self.pad_count not in (0, 1, 2):
            raise ValueError(f"pad_count must be 0, 1 or 2, got {self.pad_count}")
        if self.pad_mode not in PAD_MODES:
            raise ValueError(f"unknown pad mode {self.pad_mode!r}")

    @property
    def normalized(self) -> bool:
        return not (self.f_sca == 1.0 and self.f_wav == 1.0)


@dataclass
class Pyramid1D:
    details: list  # finest first
    coarse: np.ndarray
    theta: float
    level_meta: list = field(default_factory=list)
    original_length: int = 0

    @property
    def levels(self) -> int:
        return len(self.details)

    def bands(self):
        """Details finest-first followed by the coarse band."""
        return list(self.details) + [self.coarse]

    def with_bands(self, bands) -> Pyramid1D:
        bands = list(bands)
        return Pyramid1D(bands[:-1], bands[-1], self.theta, list(self.level_meta), self.original_length)


def attainable_levels(length: int, requested: int) -> int:
    """How many levels fit before a split would need n < 2."""
    depth = 0
    while depth < requested and length >= MIN_LENGTH:
        length = (length + 2) // 3
        depth += 1
    return depth


def _factor_pairs(factors, levels):
    if factors is None:
        return [(F_SCA, F_WAV)] * levels
    factors = list(factors)
    if len(factors) < levels:
        raise ValueError(f"need {levels} factor pairs, got {len(factors)}")
    return [(float(a), float(b)) for a, b in factors[:levels]]


def decompose_multi(
    v,
    theta: float,
    levels: int,
    mode: str = "replicate",
    factors: Sequence[tuple] | None = None,
) -> Pyramid1D:
    """Repeatedly split the scaling band.

    The depth is capped (with a warning) where the next split would need
    n < 2; ``factors`` optionally overrides the per-level (f_sca, f_wav).
    """
    if levels < 1:
        raise ValueError("levels must be >= 1")
    v = np.asarray(v, dtype=float)
    if v.ndim == 0:
        raise ValueError("expected a vector")
    depth = attainable_levels(v.shape[-1], levels)
    if depth == 0:
        raise ValueError(f"signal of length {v.shape[-1]} is too short to decompose")
    if depth < levels:
        warnings.warn(f"requested {levels} levels, only {depth} attainable for length {v.shape[-1]}", stacklevel=2)
    details, meta = [], []
    cur = v
    for f_sca, f_wav in _factor_pairs(factors, depth):
        cur, w, pad = decompose_any(cur, theta, mode, f_sca, f_wav)
        details.append(w)
        meta.append(LevelMeta(pad, mode, f_sca, f_wav))
    return Pyramid1D(details, cur, float(theta), meta, int(v.shape[-1]))


def reconstruct_multi(p: Pyramid1D) -> np.ndarray:
    if len(p.details) != len(p.level_meta) or not p.details:
        raise ValueError("pyramid has inconsistent level metadata")
    cur = np.asarray(p.coarse, dtype=float)
    for w, meta in zip(reversed(p.details), reversed(p.level_meta)):
        w = np.asarray(w, dtype=float)
        if w.shape[-1] % 2 or cur.shape[-1] < w.shape[-1] // 2:
            raise ValueError(f"band lengths inconsistent: scaling {cur.shape[-1]}, detail {w.shape[-1]}")
        cur = reconstruct_any(cur, w, p.theta, meta.f_sca, meta.f_wav)
        if meta.pad_count:
            cur = cur[..., : cur.shape[-1] - meta.pad_count]
    if cur.shape[-1] != p.original_length:
        raise ValueError(f"reconstructed length {cur.shape[-1]} != original {p.original_length}")
    return cur
