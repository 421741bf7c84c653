"""The four discrete transforms T1..T4 built on the DCT pair.

All functions act along the last axis and accept stacked inputs, which is
how the 2D transform pushes whole row/column blocks through at once.

T1/T2 are sums against p_r at the n-grid, T3/T4 against q_r at the
y-nodes. T3/T4 zero-pad to the 3n grid and fold the top m - 1 Chebyshev
coefficients onto their aliases 2n - k + 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import cheb
from .cheb import y_node_indices

__all__ = ["FoldSpec", "t1", "t2", "t3", "t4", "t1_direct", "t2_direct", "t3_direct", "t4_direct"]


@dataclass(frozen=True)
class FoldSpec:
    n: int
    m: int

    def __post_init__(self):
        if not 0 < self.m < self.n:
            raise ValueError(f"need 0 < m < n, got n={self.n}, m={self.m}")

    @classmethod
    def of(cls, spec) -> FoldSpec:
        return cls(spec.n, spec.m)


@lru_cache(maxsize=256)
def _fold_table(n, m):
    """0-based fold rows, partner rows and mixing weights for k = n-m+2..n."""
    k = np.arange(n - m + 2, n + 1)
    j = n - k + 1
    alpha = (m + j) / (2.0 * m)
    beta = (m - j) / (2.0 * m)
    rows = k - 1
    partners = 2 * n - k + 1
    for a in (rows, partners, alpha, beta):
        a.setflags(write=False)
    return rows, partners, alpha, beta


def _last_len(v, expected, name):
    v = np.asarray(v, dtype=float)
    if v.ndim == 0 or v.shape[-1] != expected:
        raise ValueError(f"{name}: expected length {expected} along the last axis, got {np.shape(v)}")
    return v


def t1(v, method: str = "fast"):
    """u_r = sum_s v_s p_r(x_s^n) = sqrt(n/pi) DCT(v)."""
    v = np.asarray(v, dtype=float)
    n = v.shape[-1]
    return np.sqrt(n / np.pi) * cheb.dct(v, method=method)


def t2(v, method: str = "fast"):
    """u_s = sum_r v_r p_r(x_s^n) = sqrt(n/pi) IDCT(v)."""
    v = np.asarray(v, dtype=float)
    n = v.shape[-1]
    return np.sqrt(n / np.pi) * cheb.idct(v, method=method)


def t3(v, fold: FoldSpec, method: str = "fast"):
    """u_r = sum_s v_s q_r(y_s^n) for v of length 2n."""
    n, m = fold.n, fold.m
    v = _last_len(v, 2 * n, "t3")
    w = np.zeros(v.shape[:-1] + (3 * n,))
    w[..., y_node_indices(n)] = v
    x = np.sqrt(3 * n / np.pi) * cheb.dct(w, method=method)
    u = x[..., :n].copy()
    rows, partners, alpha, beta = _fold_table(n, m)
    u[..., rows] = alpha * x[..., rows] - beta * x[..., partners]
    return u


def t4(v, fold: FoldSpec, method: str = "fast"):
    """u_s = sum_r v_r q_r(y_s^n) for v of length n; returns length 2n."""
    n, m = fold.n, fold.m
    v = _last_len(v, n, "t4")
    # full zero init: entries n+1 and n+m+1.. stay zero
    w = np.zeros(v.shape[:-1] + (3 * n,))
    w[..., :n] = v
    rows, partners, alpha, beta = _fold_table(n, m)
    w[..., rows] = alpha * v[..., rows]
    w[..., partners] = -beta * v[..., rows]
    x = np.sqrt(3 * n / np.pi) * cheb.idct(w, method=method)
    return x[..., y_node_indices(n)]


# direct O(n^2) definitions, kept independent of the DCT route


def _p_matrix(n_rows, nodes):
    r = np.arange(n_rows)[:, None]
    P = np.sqrt(2 / np.pi) * np.cos(r * np.arccos(np.clip(nodes, -1, 1))[None, :])
    P[0] /= np.sqrt(2.0)
    return P


def _q_matrix(n, m):
    """Q[r-1, s-1] = q_r(y_s^n)."""
    P = _p_matrix(2 * n + 1, cheb.y_nodes(n))
    Q = P[:n].copy()
    for r in range(n - m + 2, n + 1):
        j = n - r + 1
        Q[r - 1] = (m + j) / (2 * m) * P[r - 1] - (m - j) / (2 * m) * P[2 * n - r + 1]
    return Q


def t1_direct(v):
    v = np.asarray(v, dtype=float)
    n = v.shape[-1]
    return v @ _p_matrix(n, cheb.cheb_nodes(n)).T


def t2_direct(v):
    v = np.asarray(v, dtype=float)
    n = v.shape[-1]
    return v @ _p_matrix(n, cheb.cheb_nodes(n))


def t3_direct(v, fold: FoldSpec):
    v = _last_len(v, 2 * fold.n, "t3_direct")
    return v @ _q_matrix(fold.n, fold.m).T


def t4_direct(v, fold: FoldSpec):
    v = _last_len(v, fold.n, "t4_direct")
    return v @ _q_matrix(fold.n, fold.m)
