import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vpwave.compress import (
    METRICS_HEADER,
    compress_image,
    keep_fraction,
    psnr,
    retained_count,
    sorted_detail_magnitudes,
    ssim,
    ssim_map,
)
from vpwave.mra2d import Pyramid2D, decompose2d_multi, reconstruct2d_multi


def synthetic_image(size=81, seed=0):
    """Smooth gradient plus a disc edge plus mild texture, values in [0, 255]."""
    rng = np.random.default_rng(seed)
    y, x = np.mgrid[0:size, 0:size] / size
    img = 80 + 60 * x + 40 * np.sin(6 * y)
    img += 70 * ((x - 0.55) ** 2 + (y - 0.45) ** 2 < 0.06)
    img += rng.normal(0, 6, img.shape)
    return np.clip(np.rint(img), 0, 255).astype(np.uint8)


def _flat_pyramid(values):
    # 1 coarse band holding the flattened values; no detail levels
    return Pyramid2D([], np.asarray(values, float).reshape(1, -1), 0.5, [], (1, len(values)))


def test_keep_fraction_flat_example():
    p = _flat_pyramid([4, 1, -3, 2, 0, -5])
    out = keep_fraction(p, 2 / 6)
    assert out.coarse.ravel().tolist() == [4, 0, 0, 0, 0, -5]


def test_keep_fraction_ties_go_to_earlier_position():
    p = _flat_pyramid([1, -2, 2, 2, -1, 0])
    out = keep_fraction(p, 2 / 6)
    assert out.coarse.ravel().tolist() == [0, -2, 2, 0, 0, 0]


def test_keep_fraction_one_level_ninth():
    p = decompose2d_multi(np.random.default_rng(1).standard_normal((9, 9)), 0.5, 1)
    out = keep_fraction(p, 1 / 9)
    assert sum(np.count_nonzero(b) for b in out.bands()) == 9
    full = keep_fraction(p, 1.0)
    for a, b in zip(full.bands(), p.bands()):
        np.testing.assert_array_equal(a, b)
    for bad in (0.0, 1.5):
        with pytest.raises(ValueError):
            keep_fraction(p, bad)


@given(st.floats(0.01, 1.0), st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_keep_fraction_exact_count_and_values(fraction, seed):
    I = np.random.default_rng(seed).standard_normal((20, 22))
    p = decompose2d_multi(I, 0.6, 2)
    out = keep_fraction(p, fraction)
    K = retained_count(fraction, 20 * 22)
    assert sum(np.count_nonzero(b) for b in out.bands()) == K
    for a, b in zip(out.bands(), p.bands()):
        kept = a != 0
        np.testing.assert_array_equal(a[kept], b[kept])


def test_retained_count_rounding():
    assert retained_count(0.5, 9) == 5
    assert retained_count(1 / 9, 81) == 9
    assert retained_count(0.0625, 512 * 512) == 16384


def test_psnr_examples():
    I = np.random.default_rng(2).uniform(0, 255, (16, 16))
    assert psnr(I, I) == math.inf
    assert psnr(I, I + 1) == pytest.approx(48.1308036, abs=1e-6)
    assert psnr(np.zeros((4, 4)), np.full((4, 4), 255.0)) == pytest.approx(0.0)
    with pytest.raises(ValueError):
        psnr(I, I[:-1])


def test_ssim_examples():
    I = synthetic_image(64)
    assert ssim(I, I) == 1.0
    const = np.full(I.shape, 128.0)
    assert ssim(I, const) < 1
    rng = np.random.default_rng(0)
    noisy = I + rng.uniform(-1, 1, I.shape)
    val = ssim(I, noisy)
    assert 0.9 < val < 1
    with pytest.raises(ValueError):
        ssim(np.zeros((10, 20)), np.zeros((10, 20)))


def test_ssim_map_matches_skimage():
    skm = pytest.importorskip("skimage.metrics")
    I = synthetic_image(64).astype(float)
    J = np.clip(I + np.random.default_rng(3).normal(0, 8, I.shape), 0, 255)
    _, ref = skm.structural_similarity(
        I, J, data_range=255, gaussian_weights=True, sigma=1.5, use_sample_covariance=False, full=True
    )
    assert np.abs(ssim_map(I, J) - ref).max() <= 1e-10


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=10, deadline=None)
def test_ssim_identity_property(seed):
    I = np.random.default_rng(seed).uniform(0, 255, (12, 15))
    assert ssim(I, I) == 1.0


def test_sorted_detail_magnitudes():
    p = decompose2d_multi(np.random.default_rng(4).standard_normal((27, 27)), 0.5, 2)
    s = sorted_detail_magnitudes(p, 100)
    assert len(s) == 100 and np.all(np.diff(s) <= 0)
    total = sum(b.size for t in p.levels for b in t)
    assert len(sorted_detail_magnitudes(p, 10**6)) == total
    zero = decompose2d_multi(np.ones((27, 27)), 0.5, 1)
    assert np.abs(sorted_detail_magnitudes(zero, 5)).max() <= 1e-12
    with pytest.raises(ValueError):
        sorted_detail_magnitudes(p, 0)


def test_compress_full_fraction_is_lossless():
    I = synthetic_image(81)
    rec, rep = compress_image(I, 0.65, 2, 1.0)
    assert rep.psnr_db == math.inf and rep.ssim == 1.0
    # before clamping the round trip is exact to rounding
    p = decompose2d_multi(I.astype(float), 0.65, 2)
    assert np.abs(reconstruct2d_multi(p) - I).max() <= 1e-6 * 255


def test_compress_constant_image_exact():
    I = np.full((81, 81), 77, dtype=np.uint8)
    rec, rep = compress_image(I, 0.65, 2, 81 / (81 * 81))
    np.testing.assert_array_equal(rec, I)


def test_compress_report_fields():
    I = synthetic_image(81)
    rec, rep = compress_image(I, 0.65, 1, 0.25, name="synth")
    assert rep.cr == pytest.approx(4.0) and abs(rep.retained_fraction - 1 / rep.cr) <= 1e-12
    assert 0 <= rep.ssim <= 1
    assert sum(rep.nonzero_counts) == retained_count(0.25, 81 * 81)
    assert rec.min() >= 0 and rec.max() <= 255
    row = rep.csv_row().split(",")
    assert len(row) == len(METRICS_HEADER.split(",")) and row[0] == "synth"


def test_psnr_monotone_in_fraction():
    I = synthetic_image(162, seed=7)
    vals = [compress_image(I, 0.65, 2, f)[1].psnr_db for f in (0.05, 0.1, 0.25, 0.5)]
    assert vals == sorted(vals)


def test_compress_rejects_bad_fraction():
    with pytest.raises(ValueError):
        compress_image(synthetic_image(27), 0.5, 1, 0)
