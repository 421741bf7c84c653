"""Chebyshev nodes, polynomials, DCT conventions and Gauss-Chebyshev quadrature.

Index convention: documentation uses 1-based indices k = 1..n, arrays are
0-based, so ``cheb_nodes(n)[k - 1] == cos((2k - 1) pi / (2n))``.

The DCT pair used throughout is

    DCT(v)_r  = sqrt(2/N) / sqrt(1 + [r == 1]) * sum_s v_s T_{r-1}(x_s^N)
    IDCT(v)_s = sqrt(2/N) * sum_r v_r / sqrt(1 + [r == 1]) * T_{r-1}(x_s^N)

which is the orthonormal DCT-II / DCT-III pair.
"""

from __future__ import annotations

import numpy as np
import scipy.fft

__all__ = [
    "cheb_nodes",
    "cheb_angles",
    "y_nodes",
    "y_node_indices",
    "cheb_T",
    "dct",
    "idct",
    "dct_direct",
    "idct_direct",
    "gauss_cheb_integral",
    "is_3smooth",
]

_DOMAIN_TOL = 1e-12


def _check_size(n, name="n"):
    if int(n) != n or n < 1:
        raise ValueError(f"{name} must be a positive integer, got {n!r}")
    return int(n)


def cheb_angles(n: int) -> np.ndarray:
    """Angles (2k - 1) pi / (2n), k = 1..n."""
    n = _check_size(n)
    k = np.arange(1, n + 1)
    return (2 * k - 1) * np.pi / (2 * n)


def cheb_nodes(n: int) -> np.ndarray:
    """Zeros of T_n in decreasing order, computed from the angle formula.

    Computing via ``sin`` of the complementary angle keeps the symmetry
    x_k = -x_{n+1-k} exact in floating point.
    """
    n = _check_size(n)
    k = np.arange(1, n + 1)
    # cos((2k-1)pi/2n) = sin((n - 2k + 1) pi / 2n), odd in the integer argument
    return np.sin((n - 2 * k + 1) * np.pi / (2 * n))


def y_node_indices(n: int) -> np.ndarray:
    """0-based positions of the y-nodes inside the 3n grid (3k-2 and 3k, 1-based)."""
    n = _check_size(n)
    idx = np.empty(2 * n, dtype=np.intp)
    idx[0::2] = np.arange(n) * 3
    idx[1::2] = np.arange(n) * 3 + 2
    return idx


def y_nodes(n: int) -> np.ndarray:
    """The 2n zeros of T_{3n} that are not zeros of T_n."""
    return cheb_nodes(3 * _check_size(n))[y_node_indices(n)]


def cheb_T(r, x):
    """T_r(x) = cos(r arccos x); broadcasts over ``r`` and ``x``.

    Arguments slightly outside [-1, 1] (rounding) are clamped.
    """
    x = np.asarray(x, dtype=float)
    r = np.asarray(r)
    if np.any(r < 0):
        raise ValueError("Chebyshev degree must be nonnegative")
    if np.any(np.abs(x) > 1 + _DOMAIN_TOL):
        raise ValueError("cheb_T requires |x| <= 1")
    out = np.cos(r * np.arccos(np.clip(x, -1.0, 1.0)))
    return out.item() if out.ndim == 0 else out


def is_3smooth(n: int) -> bool:
    """True when n = 2^a 3^b."""
    n = int(n)
    if n < 1:
        return False
    for p in (2, 3):
        while n % p == 0:
            n //= p
    return n == 1


def _as_signal(v, axis):
    v = np.asarray(v, dtype=float)
    if v.ndim == 0 or v.shape[axis] == 0:
        raise ValueError("DCT input must be a nonempty vector")
    return v


def _dct_matrix(N):
    # C[r, s] = sqrt(2/N)/sqrt(1+[r==0]) * T_r(x_s^N)
    r = np.arange(N)[:, None]
    C = np.cos(r * cheb_angles(N)[None, :]) * np.sqrt(2.0 / N)
    C[0] /= np.sqrt(2.0)
    return C


def dct_direct(v, axis: int = -1) -> np.ndarray:
    """O(N^2) evaluation of DCT by explicit summation."""
    v = _as_signal(v, axis)
    C = _dct_matrix(v.shape[axis])
    return np.moveaxis(np.tensordot(C, np.moveaxis(v, axis, 0), axes=1), 0, axis)


def idct_direct(v, axis: int = -1) -> np.ndarray:
    """O(N^2) evaluation of IDCT by explicit summation."""
    v = _as_signal(v, axis)
    C = _dct_matrix(v.shape[axis])
    return np.moveaxis(np.tensordot(C.T, np.moveaxis(v, axis, 0), axes=1), 0, axis)


def dct(v, axis: int = -1, method: str = "fast") -> np.ndarray:
    """DCT along ``axis``; ``method`` is ``"fast"`` (FFT based) or ``"direct"``."""
    v = _as_signal(v, axis)
    if method == "direct":
        return dct_direct(v, axis)
    if method != "fast":
        raise ValueError(f"unknown DCT method {method!r}")
    return scipy.fft.dct(v, type=2, norm="ortho", axis=axis)


def idct(v, axis: int = -1, method: str = "fast") -> np.ndarray:
    """IDCT along ``axis``, inverse of :func:`dct`."""
    v = _as_signal(v, axis)
    if method == "direct":
        return idct_direct(v, axis)
    if method != "fast":
        raise ValueError(f"unknown DCT method {method!r}")
    return scipy.fft.dct(v, type=3, norm="ortho", axis=axis)


def gauss_cheb_integral(f_values) -> float:
    """Gauss-Chebyshev rule for the integral of f(x) dx / sqrt(1 - x^2).

    ``f_values`` are samples at ``cheb_nodes(M)``; exact for polynomials of
    degree <= 2M - 1.
    """
    f_values = np.asarray(f_values, dtype=float)
    M = f_values.shape[-1]
    _check_size(M, "M")
    return np.pi / M * f_values.sum(axis=-1)
