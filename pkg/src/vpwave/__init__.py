"""de la Vallée Poussin polynomial wavelets on Chebyshev nodes."""

from .cheb import cheb_nodes, dct, idct, y_nodes
from .compress import compress_image, keep_fraction, psnr, ssim
from .denoise import DenoiseConfig, calibrate_factors, denoise_signal, snr
from .mra1d import (
    Pyramid1D,
    decompose_any,
    decompose_classic,
    decompose_multi,
    reconstruct_any,
    reconstruct_classic,
    reconstruct_multi,
)
from .mra2d import Pyramid2D, decompose2d, decompose2d_multi, reconstruct2d, reconstruct2d_multi
from .signals import gen_test_signal
from .vp_basis import ResolutionSpec, oracle_decompose

__version__ = "0.1.0"
