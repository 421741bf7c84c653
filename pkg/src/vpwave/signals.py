"""Standard 1D test signals on the uniform grid t_k = (k - 1/2) / N.

Blocks, Bumps, HeaviSine and Doppler follow Donoho and Johnstone (1994).
The chirps follow the toolbox pattern ``sin((pi/3) t (J t)^2)`` with the
length exponent J fixed at 17, so each generator samples one fixed function
of t regardless of N:

    quadchirp(t) = sin((pi/3) * t * (17 t)^2)
    mishmash(t)  = quadchirp(t) + sin(pi * 0.6902 * 17 * t) + sin(pi * t * 0.125 * 17 * t)
"""

from __future__ import annotations

import numpy as np

__all__ = ["SIGNAL_NAMES", "gen_test_signal", "uniform_grid", "add_noise_at_snr"]

SIGNAL_NAMES = ("blocks", "bumps", "heavy_sine", "doppler", "quadchirp", "mishmash")

_CHIRP_EXPONENT = 17

_JUMPS = np.array([0.10, 0.13, 0.15, 0.23, 0.25, 0.40, 0.44, 0.65, 0.76, 0.78, 0.81])
_BLOCK_HEIGHTS = np.array([4.0, -5.0, 3.0, -4.0, 5.0, -4.2, 2.1, 4.3, -3.1, 2.1, -4.2])
_BUMP_HEIGHTS = np.array([4.0, 5.0, 3.0, 4.0, 5.0, 4.2, 2.1, 4.3, 3.1, 5.1, 4.2])
_BUMP_WIDTHS = np.array([0.005, 0.005, 0.006, 0.01, 0.01, 0.03, 0.01, 0.01, 0.005, 0.008, 0.005])


def uniform_grid(length: int) -> np.ndarray:
    k = np.arange(1, length + 1)
    return (k - 0.5) / length


def _blocks(t):
    steps = (1.0 + np.sign(t[None, :] - _JUMPS[:, None])) / 2.0
    return _BLOCK_HEIGHTS @ steps


def _bumps(t):
    z = np.abs(t[None, :] - _JUMPS[:, None]) / _BUMP_WIDTHS[:, None]
    return _BUMP_HEIGHTS @ (1.0 + z) ** -4


def _heavy_sine(t):
    return 4.0 * np.sin(4 * np.pi * t) - np.sign(t - 0.3) - np.sign(0.72 - t)


def _doppler(t):
    return np.sqrt(t * (1 - t)) * np.sin(2 * np.pi * 1.05 / (t + 0.05))


def _quadchirp(t):
    J = _CHIRP_EXPONENT
    return np.sin(np.pi / 3 * t * (J * t) ** 2)


def _mishmash(t):
    J = _CHIRP_EXPONENT
    return _quadchirp(t) + np.sin(np.pi * 0.6902 * J * t) + np.sin(np.pi * t * (0.125 * J * t))


_GENERATORS = {
    "blocks": _blocks,
    "bumps": _bumps,
    "heavy_sine": _heavy_sine,
    "doppler": _doppler,
    "quadchirp": _quadchirp,
    "mishmash": _mishmash,
}


def gen_test_signal(name: str, length: int) -> np.ndarray:
    """Deterministic samples of a named test signal."""
    key = name.lower().replace("-", "_")
    if key == "heavysine":
        key = "heavy_sine"
    if key not in _GENERATORS:
        raise ValueError(f"unknown signal {name!r}; choose from {', '.join(SIGNAL_NAMES)}")
    if int(length) != length or length < 16:
        raise ValueError(f"length must be an integer >= 16, got {length}")
    return _GENERATORS[key](uniform_grid(int(length)))


def add_noise_at_snr(signal, snr_db: float, rng: np.random.Generator) -> np.ndarray:
    """Add white Gaussian noise with var(signal) / var(noise) = 10^(snr_db / 10)."""
    signal = np.asarray(signal, dtype=float)
    sigma = np.sqrt(np.var(signal) / 10 ** (snr_db / 10))
    return signal + sigma * rng.standard_normal(signal.shape)
