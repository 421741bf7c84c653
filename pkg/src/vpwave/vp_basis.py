"""de la Vallée Poussin kernel, scaling/wavelet functions and the dense oracle.

Everything here is the slow, literal route: kernels are summed as Chebyshev
series, and :func:`oracle_decompose` solves the Gram system of the scaling
basis by exact quadrature. The fast transforms in :mod:`vpwave.mra1d` are
checked against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .cheb import cheb_T, cheb_nodes, gauss_cheb_integral, y_nodes

__all__ = [
    "ResolutionSpec",
    "m_from_theta",
    "MuTable",
    "BasisMatrices",
    "mu",
    "kernel_series",
    "kernel_trig",
    "scaling_eval",
    "wavelet_eval",
    "p_basis",
    "q_basis",
    "vp_interpolate",
    "oracle_decompose",
    "SING_EPS",
]

SING_EPS = 1e-6


def m_from_theta(n: int, theta: float) -> int:
    """m = clamp(floor(theta * n), 1, n - 1)."""
    if n < 2:
        raise ValueError(f"resolution n={n} admits no parameter 0 < m < n")
    if not 0.0 < theta < 1.0:
        raise ValueError(f"theta must lie in (0, 1), got {theta}")
    return min(max(math.floor(theta * n), 1), n - 1)


@dataclass(frozen=True)
class ResolutionSpec:
    """Resolution level n and VP parameter m, with 0 < m < n."""

    n: int
    m: int
    theta: float | None = None

    def __post_init__(self):
        if not (isinstance(self.n, (int, np.integer)) and isinstance(self.m, (int, np.integer))):
            raise ValueError("n and m must be integers")
        if not 0 < self.m < self.n:
            raise ValueError(f"need 0 < m < n, got n={self.n}, m={self.m}")

    @classmethod
    def from_theta(cls, n: int, theta: float) -> ResolutionSpec:
        return cls(int(n), m_from_theta(int(n), theta), float(theta))

    def tripled(self) -> ResolutionSpec:
        """Same m at resolution 3n (the kernel used by the wavelets)."""
        return ResolutionSpec(3 * self.n, self.m, self.theta)


@dataclass(frozen=True)
class MuTable:
    spec: ResolutionSpec
    values: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        n, m = self.spec.n, self.spec.m
        r = np.arange(n + m)
        vals = np.where(r <= n - m, 1.0, (m + n - r) / (2.0 * m))
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


def mu(spec: ResolutionSpec, r: int) -> float:
    n, m = spec.n, spec.m
    if not 0 <= r < n + m:
        raise ValueError(f"mu index r={r} outside 0..{n + m - 1}")
    return 1.0 if r <= n - m else (m + n - r) / (2.0 * m)


def _kernel_weights(spec):
    w = MuTable(spec).values * (2.0 / spec.n)
    w[0] *= 0.5
    return w


def _check_domain(*xs):
    for x in xs:
        if np.any(np.abs(np.asarray(x)) > 1 + 1e-12):
            raise ValueError("kernel arguments must lie in [-1, 1]")


def _kernel_matrix(spec, x, y):
    """K[i, j] = phi_n^m(x_i, y_j) via the Chebyshev series."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    r = np.arange(spec.n + spec.m)
    Tx = cheb_T(r[:, None], x[None, :])
    Ty = cheb_T(r[:, None], y[None, :])
    return (Tx * _kernel_weights(spec)[:, None]).T @ Ty


def kernel_series(spec: ResolutionSpec, x, y):
    """Kernel phi_n^m(x, y) summed as a Chebyshev series (broadcasts)."""
    _check_domain(x, y)
    w = _kernel_weights(spec)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    r = np.arange(spec.n + spec.m).reshape((-1,) + (1,) * x.ndim)
    out = np.tensordot(w, cheb_T(r, x) * cheb_T(r, y), axes=1)
    return out.item() if np.ndim(out) == 0 else out


def _sinc_ratio(n, m, d):
    """sin(n d) sin(m d) / sin^2(d / 2), continuous through d = 0 mod 2 pi."""
    d = np.asarray(d, dtype=float)
    shape = d.shape
    d = d.ravel()
    # 2 pi periodic: reduce to (-pi, pi] so the Taylor branch sees a small argument
    d = np.remainder(d + np.pi, 2 * np.pi) - np.pi
    half = np.sin(d / 2)
    near = np.abs(half) < SING_EPS
    safe = np.where(near, 1.0, half)
    out = np.sin(n * d) * np.sin(m * d) / safe**2
    if np.any(near):
        d2 = d[near] ** 2
        c2 = (1.0 / 12) - (n * n + m * m) / 6.0
        c4 = (n**4 + m**4) / 120.0 + (m * m * n * n) / 36.0 - (n * n + m * m) / 72.0 + 1.0 / 240
        out[near] = 4.0 * n * m * (1.0 + c2 * d2 + c4 * d2 * d2)
    return out.reshape(shape)


def kernel_trig(spec: ResolutionSpec, t, s):
    """Kernel at (cos t, cos s) from its closed trigonometric form."""
    n, m = spec.n, spec.m
    t, s = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(s, dtype=float))
    out = (_sinc_ratio(n, m, t - s) + _sinc_ratio(n, m, t + s)) / (4.0 * n * m)
    return out.item() if out.ndim == 0 else out


def scaling_eval(spec: ResolutionSpec, k: int, x):
    """phi_{n,k}^m(x), k = 1..n."""
    if not 1 <= k <= spec.n:
        raise ValueError(f"scaling index k={k} outside 1..{spec.n}")
    _check_domain(x)
    return kernel_series(spec, cheb_nodes(spec.n)[k - 1], x)


def wavelet_eval(spec: ResolutionSpec, k: int, x):
    """psi_{n,k}^m(x), k = 1..2n; inner kernels use the pair (3n, m)."""
    if not 1 <= k <= 2 * spec.n:
        raise ValueError(f"wavelet index k={k} outside 1..{2 * spec.n}")
    _check_domain(x)
    x = np.asarray(x, dtype=float)
    yk = y_nodes(spec.n)[k - 1]
    big = spec.tripled()
    coef = _kernel_matrix(spec, cheb_nodes(spec.n), [yk])[:, 0]
    K3 = _kernel_matrix(big, cheb_nodes(spec.n), x.ravel())
    out = _kernel_matrix(big, [yk], x.ravel())[0] - coef @ K3
    out = out.reshape(x.shape)
    return out.item() if out.ndim == 0 else out


def p_basis(r: int, x):
    """sqrt(2/pi) T_{r-1}(x) / sqrt(1 + [r == 1]), r >= 1."""
    if r < 1:
        raise ValueError("p_basis index starts at 1")
    scale = math.sqrt(2 / math.pi) / (math.sqrt(2.0) if r == 1 else 1.0)
    return scale * cheb_T(r - 1, x)


def q_basis(spec: ResolutionSpec, r: int, x):
    n, m = spec.n, spec.m
    if not 1 <= r <= n:
        raise ValueError(f"q_basis index r={r} outside 1..{n}")
    if r <= n - m + 1:
        return p_basis(r, x)
    j = n - r + 1
    return (m + j) / (2 * m) * p_basis(r, x) - (m - j) / (2 * m) * p_basis(2 * n - r + 2, x)


def vp_interpolate(samples, spec: ResolutionSpec, x):
    """V_n^m f(x) from the n samples f(x_k^n)."""
    samples = np.asarray(samples, dtype=float)
    if samples.shape != (spec.n,):
        raise ValueError(f"expected {spec.n} samples, got shape {samples.shape}")
    _check_domain(x)
    x = np.asarray(x, dtype=float)
    out = samples @ _kernel_matrix(spec, cheb_nodes(spec.n), x.ravel())
    out = out.reshape(x.shape)
    return out.item() if out.ndim == 0 else out


class BasisMatrices:
    """Dense evaluations of the scaling and wavelet bases on the 3n grid.

    Built lazily; instances are read-only once the properties are computed.
    Quadrature uses ``8n`` nodes, enough for every product of two basis
    functions up to level 3n.
    """

    def __init__(self, spec: ResolutionSpec):
        self.spec = spec
        self.quad_size = 8 * spec.n

    @cached_property
    def grid(self):
        return cheb_nodes(3 * self.spec.n)

    @cached_property
    def quad_nodes(self):
        return cheb_nodes(self.quad_size)

    def phi(self, x):
        """Matrix (n, len(x)) of phi_{n,k}(x)."""
        return _kernel_matrix(self.spec, cheb_nodes(self.spec.n), x)

    def psi(self, x):
        """Matrix (2n, len(x)) of psi_{n,k}(x)."""
        n = self.spec.n
        big = self.spec.tripled()
        yk = y_nodes(n)
        coef = _kernel_matrix(self.spec, cheb_nodes(n), yk)  # (n, 2n)
        return _kernel_matrix(big, yk, x) - coef.T @ _kernel_matrix(big, cheb_nodes(n), x)

    def phi_fine(self, x):
        """Matrix (3n, len(x)) of phi_{3n,j}^m(x)."""
        big = self.spec.tripled()
        return _kernel_matrix(big, self.grid, x)

    @cached_property
    def phi_at_3n(self):
        return _readonly(self.phi(self.grid))

    @cached_property
    def psi_at_3n(self):
        return _readonly(self.psi(self.grid))

    @cached_property
    def phi_quad(self):
        return _readonly(self.phi(self.quad_nodes))

    @cached_property
    def psi_quad(self):
        return _readonly(self.psi(self.quad_nodes))

    @cached_property
    def gram_phi(self):
        P = self.phi_quad
        return _readonly(gauss_cheb_integral(P[:, None, :] * P[None, :, :]))

    def inner(self, F, G):
        """<F_i, G_j>_w for row-stacked quadrature samples."""
        return gauss_cheb_integral(F[:, None, :] * G[None, :, :])


def _readonly(a):
    a = np.asarray(a)
    a.setflags(write=False)
    return a


def oracle_decompose(a3n, spec: ResolutionSpec | None = None, *, theta: float | None = None):
    """Ground-truth split of f_{3n} into its orthogonal projection on V_n and the rest.

    Returns ``(an, b2n)``: the projection sampled at the n-grid and the
    remainder sampled at the y-nodes.
    """
    a3n = np.asarray(a3n, dtype=float)
    if a3n.ndim != 1 or a3n.size % 3 or a3n.size < 6:
        raise ValueError("oracle_decompose needs a vector whose length is a multiple of 3 (>= 6)")
    n = a3n.size // 3
    if spec is None:
        if theta is None:
            raise ValueError("pass spec or theta")
        spec = ResolutionSpec.from_theta(n, theta)
    if spec.n != n:
        raise ValueError(f"spec.n={spec.n} does not match input length {a3n.size}")

    B = BasisMatrices(spec)
    f_quad = a3n @ B.phi_fine(B.quad_nodes)
    rhs = gauss_cheb_integral(B.phi_quad * f_quad[None, :])
    try:
        coef = np.linalg.solve(B.gram_phi, rhs)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(
            f"singular Gram matrix for n={spec.n}, m={spec.m}; cond={np.linalg.cond(B.gram_phi):.3g}"
        ) from exc
    yk = y_nodes(n)
    an = coef @ B.phi(cheb_nodes(n))
    b2n = a3n @ B.phi_fine(yk) - coef @ B.phi(yk)
    return an, b2n
