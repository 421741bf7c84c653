import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vpwave.cheb import cheb_T, cheb_nodes, gauss_cheb_integral, y_nodes
from vpwave.vp_basis import (
    BasisMatrices,
    MuTable,
    ResolutionSpec,
    kernel_series,
    kernel_trig,
    m_from_theta,
    mu,
    oracle_decompose,
    p_basis,
    q_basis,
    scaling_eval,
    vp_interpolate,
    wavelet_eval,
)

SPECS = [(6, 2), (9, 4), (27, 13)]


def test_m_from_theta_clamps():
    assert m_from_theta(10, 0.5) == 5
    assert m_from_theta(3, 0.1) == 1
    assert m_from_theta(2, 0.9) == 1
    assert m_from_theta(243, 0.99) == 240
    with pytest.raises(ValueError):
        m_from_theta(1, 0.5)
    with pytest.raises(ValueError):
        m_from_theta(9, 1.0)


def test_resolution_spec_validation():
    for n, m in [(3, 0), (3, 3), (1, 1)]:
        with pytest.raises(ValueError):
            ResolutionSpec(n, m)
    s = ResolutionSpec.from_theta(27, 0.5)
    assert (s.n, s.m) == (27, 13)
    assert s.tripled() == ResolutionSpec(81, 13, 0.5)


def test_mu_examples():
    s = ResolutionSpec(3, 1)
    assert [mu(s, r) for r in range(4)] == [1, 1, 1, 0.5]
    np.testing.assert_allclose(MuTable(ResolutionSpec(4, 2)).values, [1, 1, 1, 0.75, 0.5, 0.25])
    with pytest.raises(ValueError):
        mu(s, 4)


@given(st.integers(2, 60).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1))))
def test_mu_table_invariants(nm):
    n, m = nm
    v = MuTable(ResolutionSpec(n, m)).values
    assert v[0] == 1 and np.all(v[: n - m + 1] == 1)
    assert np.all(np.diff(v[n - m :]) < 0)
    assert v[-1] == pytest.approx(1 / (2 * m))
    with pytest.raises(ValueError):
        v[0] = 2.0


@pytest.mark.parametrize("n,m", [(6, 2), (9, 3), (9, 4)])
def test_kernel_interpolation_delta(n, m):
    x = cheb_nodes(n)
    K = kernel_series(ResolutionSpec(n, m), x[:, None], x[None, :])
    assert np.abs(K - np.eye(n)).max() <= 1e-12


def test_kernel_series_symmetric_and_domain():
    s = ResolutionSpec(9, 4)
    rng = np.random.default_rng(1)
    x, y = rng.uniform(-1, 1, (2, 30))
    np.testing.assert_allclose(kernel_series(s, x, y), kernel_series(s, y, x), atol=1e-14)
    with pytest.raises(ValueError):
        kernel_series(s, 1.1, 0.0)


def test_kernel_trig_matches_series():
    s = ResolutionSpec(9, 4)
    rng = np.random.default_rng(2)
    t, u = rng.uniform(0, np.pi, (2, 100))
    diff = kernel_trig(s, t, u) - kernel_series(s, np.cos(t), np.cos(u))
    assert np.abs(diff).max() <= 1e-11


def test_kernel_trig_examples():
    s = ResolutionSpec(4, 2)
    assert kernel_trig(s, np.pi / 2, np.pi / 2) == pytest.approx(kernel_series(s, 0.0, 0.0), abs=1e-12)
    t = 0.7
    for gap in (1e-6, 1e-7, 0.0, 5e-7):
        ref = kernel_series(s, math.cos(t), math.cos(t + gap))
        assert abs(kernel_trig(s, t, t + gap) - ref) <= 1e-9
    rng = np.random.default_rng(5)
    a, b = rng.uniform(-7, 7, (2, 20))
    np.testing.assert_allclose(kernel_trig(s, a, b), kernel_trig(s, -a, -b), atol=1e-13)


@pytest.mark.parametrize("n,m", SPECS)
def test_trig_near_singular_sets(n, m):
    s = ResolutionSpec(n, m)
    t = np.linspace(0.01, np.pi - 0.01, 25)
    for off in (0.0, 3e-7, 2e-6, 1e-4):
        for other in (t + off, 2 * np.pi - t + off, -t + off):
            ref = kernel_series(s, np.cos(t), np.cos(other))
            assert np.abs(kernel_trig(s, t, other) - ref).max() <= 1e-8


def test_scaling_eval_examples():
    s = ResolutionSpec(9, 3)
    x = cheb_nodes(9)
    D = np.array([[scaling_eval(s, k, xh) for xh in x] for k in range(1, 10)])
    assert np.abs(D - np.eye(9)).max() <= 1e-12
    pts = np.random.default_rng(0).uniform(-1, 1, 20)
    total = sum(scaling_eval(s, k, pts) for k in range(1, 10))
    assert np.abs(total - 1).max() <= 1e-12
    with pytest.raises(ValueError):
        scaling_eval(s, 0, 0.0)
    with pytest.raises(ValueError):
        scaling_eval(s, 10, 0.0)


def test_wavelet_eval_examples():
    s = ResolutionSpec(6, 2)
    y = y_nodes(6)
    D = np.array([wavelet_eval(s, k, y) for k in range(1, 13)])
    assert np.abs(D - np.eye(12)).max() <= 1e-12
    x = cheb_nodes(6)
    for k in (1, 5, 12):
        for h in (1, 4):
            assert wavelet_eval(s, k, x[h - 1]) == pytest.approx(-scaling_eval(s, h, y[k - 1]), abs=1e-12)
    with pytest.raises(ValueError):
        wavelet_eval(s, 13, 0.0)


def test_wavelet_moments_with_4n_quadrature():
    s = ResolutionSpec(6, 2)
    xq = cheb_nodes(4 * 6)
    for k in range(1, 13):
        psi = wavelet_eval(s, k, xq)
        for r in range(6 - 2 + 1):
            assert abs(gauss_cheb_integral(xq**r * psi)) <= 1e-10


@pytest.mark.parametrize("n,m", SPECS)
def test_basis_matrices_deltas(n, m):
    B = BasisMatrices(ResolutionSpec(n, m))
    assert np.abs(B.phi_at_3n[:, 1::3] - np.eye(n)).max() <= 1e-11
    assert np.abs(B.psi(y_nodes(n)) - np.eye(2 * n)).max() <= 1e-11
    G = B.gram_phi
    assert np.allclose(G, G.T, atol=1e-15)
    assert np.linalg.eigvalsh(G).min() > 0
    assert not B.phi_at_3n.flags.writeable


@pytest.mark.parametrize("n,m", SPECS)
def test_orthogonality_phi_psi(n, m):
    B = BasisMatrices(ResolutionSpec(n, m))
    assert np.abs(B.inner(B.phi_quad, B.psi_quad)).max() <= 1e-10


@pytest.mark.parametrize("n,m", SPECS)
def test_moments(n, m):
    B = BasisMatrices(ResolutionSpec(n, m))
    xq = B.quad_nodes
    xk = cheb_nodes(n)
    for r in range(n - m + 1):
        wav = gauss_cheb_integral(B.psi_quad * xq**r)
        sca = gauss_cheb_integral(B.phi_quad * xq**r)
        assert np.abs(wav).max() <= 1e-10
        # verified against quadrature: the scaling moment carries a pi/n weight
        assert np.abs(sca - np.pi / n * xk**r).max() <= 1e-10


def test_scaling_integral_is_pi_over_n():
    s = ResolutionSpec(9, 3)
    xq = cheb_nodes(64)
    for k in (1, 5, 9):
        assert gauss_cheb_integral(scaling_eval(s, k, xq)) == pytest.approx(np.pi / 9, abs=1e-13)


def test_p_basis():
    assert p_basis(1, 0.3) == pytest.approx(1 / math.sqrt(math.pi))
    assert p_basis(2, 0.5) == pytest.approx(math.sqrt(2 / math.pi) * 0.5)
    with pytest.raises(ValueError):
        p_basis(0, 0.0)
    xq = cheb_nodes(16)
    P = np.array([p_basis(r, xq) for r in range(1, 7)])
    G = gauss_cheb_integral(P[:, None, :] * P[None, :, :])
    assert np.abs(G - np.eye(6)).max() <= 1e-13


def test_q_basis_examples():
    s = ResolutionSpec(5, 2)
    x = np.linspace(-1, 1, 11)
    np.testing.assert_allclose(q_basis(s, 3, x), p_basis(3, x))
    np.testing.assert_allclose(q_basis(s, 5, x), 0.75 * p_basis(5, x) - 0.25 * p_basis(7, x), atol=1e-15)
    with pytest.raises(ValueError):
        q_basis(s, 6, 0.0)


def test_q_basis_branch_edge():
    # at r = n-m+1 the folded formula would have weights (1, 0), so both agree
    n, m = 7, 3
    s = ResolutionSpec(n, m)
    r = n - m + 1
    j = n - r + 1
    assert (m + j) / (2 * m) == 1 and (m - j) / (2 * m) == 0
    x = np.linspace(-1, 1, 9)
    folded = (m + j) / (2 * m) * p_basis(r, x) - (m - j) / (2 * m) * p_basis(2 * n - r + 2, x)
    np.testing.assert_allclose(q_basis(s, r, x), folded, atol=1e-15)


def test_vp_interpolate_reproduction():
    rng = np.random.default_rng(4)
    pts = rng.uniform(-1, 1, 50)
    s = ResolutionSpec(9, 4)
    x = cheb_nodes(9)
    assert np.abs(vp_interpolate(np.ones(9), s, pts) - 1).max() <= 1e-12
    for n in (3, 5, 12):
        sp = ResolutionSpec(n, n - 1)
        xn = cheb_nodes(n)
        assert np.abs(vp_interpolate(xn, sp, pts) - pts).max() <= 1e-12
    # degree n - m reproduced
    assert np.abs(vp_interpolate(x**5, s, pts) - pts**5).max() <= 1e-12
    with pytest.raises(ValueError):
        vp_interpolate(np.ones(8), s, 0.0)


@pytest.mark.slow
def test_vp_interpolate_abs_rate():
    grid = np.linspace(-1, 1, 20001)
    errs = []
    for n in (27, 81, 243):
        s = ResolutionSpec.from_theta(n, 0.5)
        approx = vp_interpolate(np.abs(cheb_nodes(n)), s, grid)
        errs.append(np.abs(approx - np.abs(grid)).max())
    ratios = [errs[1] / errs[0], errs[2] / errs[1]]
    assert all(0.2 <= q <= 0.5 for q in ratios), (errs, ratios)


def test_oracle_constant_and_element():
    s = ResolutionSpec(6, 2)
    an, b = oracle_decompose(np.full(18, 2.5), s)
    np.testing.assert_allclose(an, 2.5, atol=1e-12)
    assert np.abs(b).max() <= 1e-12
    B = BasisMatrices(s)
    an, b = oracle_decompose(B.phi_at_3n[0], s)
    e1 = np.zeros(6)
    e1[0] = 1
    assert np.abs(an - e1).max() <= 1e-11
    assert np.abs(b).max() <= 1e-11


@pytest.mark.parametrize("n,m", SPECS[:2])
def test_oracle_direct_sum_identity(n, m):
    s = ResolutionSpec(n, m)
    B = BasisMatrices(s)
    a = np.random.default_rng(n).standard_normal(3 * n)
    an, b = oracle_decompose(a, s)
    rec = an @ B.phi_at_3n + b @ B.psi_at_3n
    assert np.abs(rec - a).max() <= 1e-10


def test_oracle_errors():
    with pytest.raises(ValueError):
        oracle_decompose(np.ones(10), theta=0.5)
    with pytest.raises(ValueError):
        oracle_decompose(np.ones(9))
    with pytest.raises(ValueError):
        oracle_decompose(np.ones(9), ResolutionSpec(4, 2))


def test_cheb_T_matches_recurrence():
    x = np.linspace(-1, 1, 7)
    T = [np.ones_like(x), x]
    for _ in range(10):
        T.append(2 * x * T[-1] - T[-2])
    for r, ref in enumerate(T):
        np.testing.assert_allclose(cheb_T(r, x), ref, atol=1e-12)


@given(st.floats(-1, 1), st.floats(-1, 1))
@settings(max_examples=60)
def test_kernel_forms_agree_property(x, y):
    s = ResolutionSpec(9, 4)
    t, u = math.acos(x), math.acos(y)
    assert abs(kernel_trig(s, t, u) - kernel_series(s, x, y)) <= 1e-8
