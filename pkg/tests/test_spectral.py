import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fkgs.spectral import (
    ConfigurationError,
    OrderDomainError,
    ShapeError,
    SingularOperatorError,
    UnsupportedDimensionError,
    apply_neg_frac_laplacian,
    dense_matrix,
    half_multiplier,
    inner,
    make_grid,
    make_multiplier,
    solve_shifted,
)


class TestMakeGrid:
    def test_soliton_box(self):
        g = make_grid((-20, 20), 128)
        assert g.h == (0.3125,)
        assert math.isclose(g.mu[0], math.pi / 20)

    def test_two_pi_box(self):
        g = make_grid([(0, 2 * np.pi), (0, 2 * np.pi)], 16)
        assert g.dim == 2
        assert g.n == (16, 16)
        assert np.allclose(g.h, np.pi / 8)
        assert np.allclose(g.mu, 1.0)

    def test_nodes_exclude_right_endpoint(self):
        g = make_grid((0, 1), 4)
        np.testing.assert_array_equal(g.axes()[0], [0, 0.25, 0.5, 0.75])

    def test_h_times_n_is_length(self):
        g = make_grid([(-3.3, 7.1), (0.5, 2.0)], (12, 8))
        for h, n, length in zip(g.h, g.n, g.lengths):
            assert math.isclose(h * n, length)

    @pytest.mark.parametrize("n", [3, 7, 2, 0, -4])
    def test_rejects_odd_or_tiny(self, n):
        with pytest.raises(ConfigurationError):
            make_grid((0, 1), n)

    @pytest.mark.parametrize("box", [(1, 1), (2, 1)])
    def test_rejects_degenerate_box(self, box):
        with pytest.raises(ConfigurationError):
            make_grid(box, 8)

    def test_rejects_3d(self):
        with pytest.raises(ConfigurationError):
            make_grid([(0, 1)] * 3, 4)


class TestMultiplier:
    def test_constant_mode_is_zero(self):
        m = make_multiplier(make_grid((-20, 20), 32), 1.5)
        assert m.values[0] == 0.0

    def test_k1_classical(self):
        m = make_multiplier(make_grid((-20, 20), 128), 2)
        assert math.isclose(m.values[1], (math.pi / 20) ** 2)
        assert math.isclose(m.values[1], 0.0246740110027234, rel_tol=1e-12)

    def test_k3_fractional(self):
        m = make_multiplier(make_grid((0, 2 * np.pi), 16), 1.4)
        assert math.isclose(m.values[3], math.pow(3.0, 1.4), rel_tol=1e-13)
        assert math.isclose(m.values[3], 4.6555, rel_tol=1e-4)

    def test_nyquist_carries_full_weight(self):
        g = make_grid((0, 2 * np.pi), 8)
        m = make_multiplier(g, 1.3)
        assert math.isclose(m.values[4], 4**1.3)

    def test_even_in_k(self):
        m = make_multiplier(make_grid((0, 3), 16), 1.7)
        v = m.values
        for k in range(1, 8):
            assert v[k] == v[-k]
        assert np.all(v >= 0)

    def test_radial_2d(self):
        g = make_grid([(0, 2 * np.pi), (0, 4 * np.pi)], (8, 8))
        m = make_multiplier(g, 1.5)
        assert math.isclose(m.values[2, 3], (4 + 0.25 * 9) ** 0.75)
        assert m.values[0, 0] == 0

    @pytest.mark.parametrize("s", [1.0, 0.5, 2.0001, -1])
    def test_order_domain(self, s):
        with pytest.raises(OrderDomainError):
            make_multiplier(make_grid((0, 1), 8), s)

    def test_table_is_read_only(self):
        m = make_multiplier(make_grid((0, 1), 8), 2)
        with pytest.raises(ValueError):
            m.values[1] = 0


class TestApply:
    def test_constant_annihilated(self):
        g = make_grid((-20, 20), 64)
        m = make_multiplier(g, 1.5)
        np.testing.assert_allclose(apply_neg_frac_laplacian(np.full(64, 3.0), m), 0, atol=1e-14)

    @pytest.mark.parametrize("s", [2.0, 1.4])
    def test_sine_eigenfunction(self, s):
        g = make_grid((-20, 20), 128)
        (x,) = g.nodes()
        mu = g.mu[0]
        out = apply_neg_frac_laplacian(np.sin(mu * x), make_multiplier(g, s))
        np.testing.assert_allclose(out, -(mu**s) * np.sin(mu * x), atol=1e-14)

    def test_2d_eigenfunction(self):
        g = make_grid([(0, 2 * np.pi), (0, 2 * np.pi)], 16)
        x, y = g.nodes()
        f = np.cos(2 * x - 3 * y)
        out = apply_neg_frac_laplacian(f, make_multiplier(g, 1.6))
        np.testing.assert_allclose(out, -(13**0.8) * f, atol=1e-12)

    def test_2d_separable_matches_1d(self):
        g2 = make_grid([(0, 2 * np.pi), (-1, 1)], (16, 8))
        g1 = make_grid((0, 2 * np.pi), 16)
        rng = np.random.default_rng(3)
        f = rng.standard_normal(16)
        # Constant in y: the radial symbol reduces to the 1D one.
        out2 = apply_neg_frac_laplacian(np.repeat(f[:, None], 8, axis=1), make_multiplier(g2, 1.3))
        out1 = apply_neg_frac_laplacian(f, make_multiplier(g1, 1.3))
        np.testing.assert_allclose(out2, np.repeat(out1[:, None], 8, axis=1), atol=1e-13)

    def test_s2_is_second_derivative_per_mode(self):
        g = make_grid((0, 2 * np.pi), 16)
        (x,) = g.nodes()
        m = make_multiplier(g, 2)
        for k in range(1, 8):
            np.testing.assert_allclose(apply_neg_frac_laplacian(np.exp(1j * k * x), m), -(k**2) * np.exp(1j * k * x), atol=1e-12)

    def test_grid_mismatch(self):
        m = make_multiplier(make_grid((0, 1), 8), 1.5)
        with pytest.raises(ShapeError):
            apply_neg_frac_laplacian(np.zeros(16), m)

    def test_round_trip_transform(self):
        rng = np.random.default_rng(0)
        f = rng.standard_normal((16, 8))
        back = np.fft.ifftn(np.fft.fftn(f)).real
        assert np.max(np.abs(back - f)) <= 1e-13 * np.max(np.abs(f))


class TestDenseOracle:
    @pytest.mark.parametrize("n", [8, 32, 128])
    @pytest.mark.parametrize("s", [1.1, 1.5, 2.0])
    def test_matches_transform_route(self, n, s):
        g = make_grid((-20, 20), n)
        mat = dense_matrix(g, s)
        m = make_multiplier(g, s)
        rng = np.random.default_rng(n)
        for _ in range(10):
            v = rng.standard_normal(n)
            v /= np.linalg.norm(v)
            assert np.max(np.abs(mat @ v - apply_neg_frac_laplacian(v, m))) <= 1e-11

    def test_symmetric_with_zero_row_sums(self):
        mat = dense_matrix(make_grid((0, 2 * np.pi), 32), 1.7)
        np.testing.assert_allclose(mat, mat.T, atol=1e-13)
        np.testing.assert_allclose(mat.sum(axis=1), 0, atol=1e-12)

    def test_s2_matches_classical_second_derivative(self):
        # Even-N Fourier second-derivative matrix, closed form (Trefethen, ch. 3).
        n = 16
        mat = dense_matrix(make_grid((0, 2 * np.pi), n), 2)
        h = 2 * np.pi / n
        j = np.arange(n)
        diff = (j[:, None] - j[None, :]) % n
        with np.errstate(divide="ignore"):
            ref = -0.5 * (-1.0) ** diff / np.sin(h * diff / 2) ** 2
        ref[diff == 0] = -np.pi**2 / (3 * h**2) - 1 / 6
        # The closed form treats the Nyquist mode like the text (full weight).
        np.testing.assert_allclose(mat, ref, atol=1e-10)

    def test_rejects_2d(self):
        with pytest.raises(UnsupportedDimensionError):
            dense_matrix(make_grid([(0, 1), (0, 1)], 8), 1.5)


class TestSolveShifted:
    def test_zero_rhs(self):
        m = make_multiplier(make_grid((0, 1), 8), 1.5)
        np.testing.assert_array_equal(solve_shifted(2.0, 1.0, m, np.zeros(8)), 0)

    def test_identity(self):
        m = make_multiplier(make_grid((0, 1), 8), 1.5)
        f = np.arange(8.0)
        np.testing.assert_allclose(solve_shifted(1.0, 0.0, m, f), f, atol=1e-14)

    def test_single_mode(self):
        g = make_grid((0, 2 * np.pi), 16)
        (x,) = g.nodes()
        tau = 0.1
        out = solve_shifted(1.0, tau**2 / 4, make_multiplier(g, 2), np.sin(x))
        np.testing.assert_allclose(out, np.sin(x) / 1.0025, atol=1e-15)

    def test_residual(self):
        g = make_grid((-20, 20), 64)
        m = make_multiplier(g, 1.3)
        rng = np.random.default_rng(7)
        rhs = rng.standard_normal(64)
        a, b = 1.3, 0.7
        x = solve_shifted(a, b, m, rhs)
        resid = a * x - b * apply_neg_frac_laplacian(x, m) - rhs
        assert np.linalg.norm(resid) <= 1e-12 * np.linalg.norm(rhs)

    def test_complex_coefficients(self):
        g = make_grid((0, 2 * np.pi), 16)
        m = make_multiplier(g, 1.5)
        rng = np.random.default_rng(8)
        rhs = rng.standard_normal(16) + 1j * rng.standard_normal(16)
        b = -0.25j * 0.1
        x = solve_shifted(1.0, b, m, rhs)
        resid = x - b * apply_neg_frac_laplacian(x, m) - rhs
        assert np.max(np.abs(resid)) <= 1e-13

    def test_singular(self):
        m = make_multiplier(make_grid((0, 1), 8), 1.5)
        with pytest.raises(SingularOperatorError):
            solve_shifted(0.0, 1.0, m, np.ones(8))


fields_1d = st.integers(min_value=0, max_value=2**32 - 1)


class TestOperatorIdentities:
    @settings(max_examples=50, deadline=None)
    @given(seed=fields_1d, s=st.floats(1.01, 2.0), n=st.sampled_from([8, 16, 64]))
    def test_symmetry_and_negativity(self, seed, s, n):
        g = make_grid((-20, 20), n)
        m = make_multiplier(g, s)
        rng = np.random.default_rng(seed)
        p, q = rng.standard_normal((2, n))
        dp, dq = apply_neg_frac_laplacian(p, m), apply_neg_frac_laplacian(q, m)
        lhs, rhs = inner(dp, q, g), inner(p, dq, g)
        scale = np.linalg.norm(dp) * np.linalg.norm(q) * g.weight
        assert abs(lhs - rhs) <= 1e-11 * scale
        assert inner(dp, p, g) <= 1e-11 * scale

    @settings(max_examples=30, deadline=None)
    @given(seed=fields_1d, s=st.floats(1.01, 2.0))
    def test_half_order_factorisation(self, seed, s):
        g = make_grid([(0, 2 * np.pi), (-3, 3)], (8, 16))
        m = make_multiplier(g, s)
        half = half_multiplier(m)
        rng = np.random.default_rng(seed)
        p, q = rng.standard_normal((2, 8, 16))
        lhs = inner(apply_neg_frac_laplacian(p, m), q, g)
        sp = -apply_neg_frac_laplacian(p, half)
        sq = -apply_neg_frac_laplacian(q, half)
        rhs = -inner(sp, sq, g)
        scale = g.weight * np.linalg.norm(sp) * np.linalg.norm(sq)
        assert abs(lhs - rhs) <= 1e-11 * max(scale, 1.0)
