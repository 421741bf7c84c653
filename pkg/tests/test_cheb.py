import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vpwave.cheb import (
    cheb_T,
    cheb_nodes,
    dct,
    dct_direct,
    gauss_cheb_integral,
    idct,
    idct_direct,
    is_3smooth,
    y_node_indices,
    y_nodes,
)


def test_cheb_nodes_small():
    assert cheb_nodes(1) == pytest.approx([0.0], abs=1e-16)
    np.testing.assert_allclose(cheb_nodes(2), [math.sqrt(0.5), -math.sqrt(0.5)], rtol=0, atol=1e-15)
    assert cheb_nodes(3)[1] == 0.0


def test_cheb_nodes_match_cosine_formula():
    n = 17
    k = np.arange(1, n + 1)
    np.testing.assert_allclose(cheb_nodes(n), np.cos((2 * k - 1) * np.pi / (2 * n)), atol=1e-15)


@pytest.mark.parametrize("n", [1, 2, 7, 64, 243])
def test_cheb_nodes_exact_symmetry(n):
    x = cheb_nodes(n)
    assert np.array_equal(x, -x[::-1])
    assert np.all(np.diff(x) < 0)


@pytest.mark.parametrize("bad", [0, -3])
def test_nodes_reject_nonpositive(bad):
    with pytest.raises(ValueError):
        cheb_nodes(bad)
    with pytest.raises(ValueError):
        y_nodes(bad)


def test_y_nodes_n1():
    np.testing.assert_allclose(y_nodes(1), [math.sqrt(3) / 2, -math.sqrt(3) / 2], atol=1e-15)


def test_merge_reproduces_triple_grid_n2():
    merged = np.empty(6)
    merged[1::3] = cheb_nodes(2)
    merged[y_node_indices(2)] = y_nodes(2)
    np.testing.assert_array_equal(merged, cheb_nodes(6))


def test_node_identity_up_to_243():
    worst = 0.0
    for n in range(1, 244):
        merged = np.empty(3 * n)
        merged[1::3] = cheb_nodes(n)
        merged[y_node_indices(n)] = y_nodes(n)
        worst = max(worst, np.abs(merged - cheb_nodes(3 * n)).max())
    assert worst <= 1e-15


@pytest.mark.parametrize("n", [1, 4, 9, 30])
def test_y_nodes_disjoint_from_x(n):
    gap = np.abs(y_nodes(n)[:, None] - cheb_nodes(n)[None, :]).min()
    assert gap > 1e-3 / n


def test_cheb_T_values():
    assert cheb_T(0, 0.37) == 1.0
    assert cheb_T(3, 0.5) == pytest.approx(-1.0, abs=1e-15)
    assert np.abs(cheb_T(7, cheb_nodes(7))).max() < 1e-14


def test_cheb_T_clamps_and_rejects():
    assert cheb_T(2, 1 + 1e-14) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        cheb_T(2, 1.001)


def test_dct_of_ones():
    np.testing.assert_allclose(dct(np.ones(4)), [2, 0, 0, 0], atol=1e-15)


def test_idct_of_e1():
    np.testing.assert_allclose(idct([1, 0, 0, 0]), [0.5] * 4, atol=1e-15)


def test_idct_e2_n3():
    np.testing.assert_allclose(idct([0, 1, 0]), math.sqrt(2 / 3) * cheb_nodes(3), atol=1e-15)


def test_dct_rejects_empty():
    with pytest.raises(ValueError):
        dct([])
    with pytest.raises(ValueError):
        idct(np.zeros(0))


def _direct_sum_dct(v):
    # literal double loop, independent of any matrix helper
    N = len(v)
    x = np.cos((2 * np.arange(1, N + 1) - 1) * np.pi / (2 * N))
    out = np.zeros(N)
    for r in range(1, N + 1):
        acc = sum(v[s] * math.cos((r - 1) * math.acos(x[s])) for s in range(N))
        out[r - 1] = math.sqrt(2 / N) / math.sqrt(1 + (r == 1)) * acc
    return out


def test_fast_dct_equals_literal_sum_n9():
    v = np.random.default_rng(3).standard_normal(9)
    ref = _direct_sum_dct(v)
    np.testing.assert_allclose(dct(v), ref, rtol=0, atol=1e-13 * np.abs(ref).max())
    np.testing.assert_allclose(dct_direct(v), ref, rtol=0, atol=1e-13 * np.abs(ref).max())


@pytest.mark.parametrize("N", list(range(1, 65)) + [81, 243, 729])
def test_dct_roundtrip_and_paths(N):
    rng = np.random.default_rng(N)
    v = rng.standard_normal(N)
    scale = np.abs(v).max()
    assert np.abs(idct(dct(v)) - v).max() <= 1e-12 * scale
    assert np.abs(dct(idct(v)) - v).max() <= 1e-12 * scale
    if N <= 243:
        d = dct_direct(v)
        assert np.abs(dct(v) - d).max() <= 1e-12 * np.abs(d).max()
        i = idct_direct(v)
        assert np.abs(idct(v) - i).max() <= 1e-12 * np.abs(i).max()


@pytest.mark.parametrize("N", [5, 9, 27, 12])
def test_inverse_pair(N):
    v = np.random.default_rng(11).standard_normal(N)
    assert np.abs(idct(dct(v)) - v).max() <= 1e-13
    assert np.abs(dct(idct(v)) - v).max() <= 1e-13


def test_dct_axis_batch():
    a = np.random.default_rng(0).standard_normal((5, 12))
    np.testing.assert_allclose(dct(a.T, axis=0).T, dct(a), atol=1e-14)


def test_is_3smooth():
    assert [n for n in range(1, 30) if is_3smooth(n)] == [1, 2, 3, 4, 6, 8, 9, 12, 16, 18, 24, 27]


def test_quadrature_constants():
    for M in (1, 3, 10):
        assert gauss_cheb_integral(np.ones(M)) == pytest.approx(math.pi)
    assert gauss_cheb_integral(cheb_nodes(4) ** 2) == pytest.approx(math.pi / 2)
    assert gauss_cheb_integral(cheb_T(3, cheb_nodes(8)) ** 2) == pytest.approx(math.pi / 2)


def _weighted_moment(r):
    # int x^r / sqrt(1-x^2) dx = pi * (r-1)!! / r!! for even r, 0 for odd r
    if r % 2:
        return 0.0
    return math.pi * math.comb(r, r // 2) / 2**r


@given(st.integers(min_value=1, max_value=20))
@settings(max_examples=20, deadline=None)
def test_quadrature_exact_for_monomials(M):
    x = cheb_nodes(M)
    for r in range(2 * M):
        assert abs(gauss_cheb_integral(x**r) - _weighted_moment(r)) <= 1e-12
