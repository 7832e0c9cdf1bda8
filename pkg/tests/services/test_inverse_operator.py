"""Tests for the inversion of the linearised operator."""

import numpy as np
import pytest

from app.exceptions import InvalidParameterError
from app.models.inversion import InversionMethod
from app.models.state import FourierState
from app.services.inverse_operator import (
    apply_L,
    assemble_matrix,
    inverse_norm,
    inverse_norm_sweep,
    invert_dense,
    invert_explicit,
    mode_indices,
    periodic_solution,
)
from app.services.operators.multilinear import b2
from app.services.spectrum import (
    mode_pair,
    project,
    random_state,
    sobolev_norm,
    u_to_v,
    v_to_u,
)

C = 1.0 / 3.0
T = 0.25


@pytest.fixture
def phi():
    return mode_pair(1, 0.3) + mode_pair(2, 0.1j)


@pytest.fixture
def f():
    return random_state(seed=2, m=4, s=0.0, target_norm=1.0)


class TestAssembleMatrix:
    """Test the truncated matrix of L."""

    def test_mode_indices(self):
        """Test the matrix ordering skips k = 0."""
        np.testing.assert_array_equal(mode_indices(2), [-2, -1, 1, 2])

    def test_matches_apply(self, phi):
        """Test the matrix reproduces apply_L inside the truncation."""
        v = FourierState({-1: 0.5, 3: 0.2j})
        M = 8

        matrix = assemble_matrix(phi, T, C, M)
        vector = np.array([v[int(k)] for k in mode_indices(M)])
        image = apply_L(phi, v, T, C)

        expected = np.array([image[int(k)] for k in mode_indices(M)])
        np.testing.assert_allclose(matrix @ vector, expected, atol=1e-14)

    def test_zero_phi_is_identity(self):
        """Test phi = 0 gives the identity."""
        matrix = assemble_matrix(FourierState.zero(), T, C, 3)

        np.testing.assert_array_equal(matrix, np.eye(6))

    def test_invalid_size(self, phi):
        """Test M < 1 is refused."""
        with pytest.raises(InvalidParameterError):
            assemble_matrix(phi, T, C, 0)


class TestInvertDense:
    """Test the LU solve."""

    def test_zero_phi(self, f):
        """Test L = I returns the right-hand side."""
        report = invert_dense(FourierState.zero(), f, T, C, 8)

        assert report.method == InversionMethod.DENSE
        assert report.solution.allclose(f, tol=1e-15)
        assert report.condition == pytest.approx(1.0)

    def test_residual(self, phi, f):
        """Test the solution satisfies L v = f up to its tail."""
        report = invert_dense(phi, f, T, C, 48)

        assert report.residual < 1e-10
        assert report.solution.real_valued
        assert apply_L(phi, report.solution, T, C).allclose(f, tol=1e-10)

    def test_tail_recorded(self, phi):
        """Test modes of f beyond M are reported as a tail."""
        f = mode_pair(1, 1.0) + mode_pair(9, 0.5)

        report = invert_dense(phi, f, T, C, 4)

        assert report.tail_norm == pytest.approx(np.sqrt(0.5))

    def test_cutoff_below_support(self, phi, f):
        """Test M must cover the support of phi."""
        with pytest.raises(InvalidParameterError):
            invert_dense(phi, f, T, C, 1)


class TestInvertExplicit:
    """Test the integrating-factor solver."""

    def test_zero_phi(self, f):
        """Test L = I returns the right-hand side."""
        report = invert_explicit(FourierState.zero(), f, T, C)

        assert report.method == InversionMethod.EXPLICIT
        assert report.solution.allclose(f, tol=1e-12)
        assert report.c_tilde == pytest.approx(0.0, abs=1e-14)

    def test_residual(self, phi, f):
        """Test the explicit solution satisfies L v = f."""
        report = invert_explicit(phi, f, T, C, grid=256)

        assert report.residual < 1e-10
        assert report.periodicity_defect < 1e-10
        assert report.cutoff == 64

    def test_agrees_with_dense(self, phi, f):
        """Test the two solvers agree on the common modes."""
        explicit = invert_explicit(phi, f, T, C, grid=256)
        dense = invert_dense(phi, f, T, C, 48)

        low = {k: z for k, z in explicit.solution.items() if abs(k) <= 48}
        assert FourierState(low).allclose(dense.solution, tol=1e-10)

    def test_first_order_neumann(self):
        """Test small phi gives v = f + c B2(phi, f) up to O(||phi||^2)."""
        small = random_state(seed=3, m=8, s=0.0, target_norm=1e-3)
        f = random_state(seed=4, m=8, s=0.0, target_norm=1.0)

        report = invert_explicit(small, f, 0.4, 1.0)

        first_order = f + b2(small, f, 0.4)
        assert sobolev_norm(report.solution - first_order, 0.0) < 1e-5

    @pytest.mark.parametrize("t", [0.1, 0.7, 2.3])
    def test_gauge_invariance(self, phi, f, t):
        """Test the solution at t is the gauged solution at t = 0."""
        at_t = invert_explicit(phi, f, t, C, grid=256)
        at_zero = invert_explicit(
            v_to_u(phi, t), v_to_u(f, t), 0.0, C, grid=256
        )

        assert at_t.solution.allclose(u_to_v(at_zero.solution, t), 1e-12)
        assert at_t.residual < 1e-10
        assert at_zero.residual < 1e-10

    def test_grid_too_small(self, phi, f):
        """Test the grid must exceed four times the supports."""
        with pytest.raises(InvalidParameterError):
            invert_explicit(phi, f, T, C, grid=24)


class TestInverseNorm:
    """Test the norm of the inverse."""

    def test_identity(self):
        """Test phi = 0 gives norm 1."""
        assert inverse_norm(FourierState.zero(), T, C, 4) == pytest.approx(
            1.0
        )

    def test_sweep(self, phi):
        """Test the sweep scales phi by each amplitude."""
        sweep = inverse_norm_sweep(phi, [0.0, 1.0], T, C, 8)

        assert [a for a, _ in sweep] == [0.0, 1.0]
        assert sweep[0][1] == pytest.approx(1.0)
        assert np.isfinite(sweep[1][1])
        assert sweep[1][1] != pytest.approx(1.0)


class TestPeriodicSolution:
    """Test the integrating-factor solve on the collocation grid."""

    GRID = 128

    @pytest.fixture
    def data(self):
        """Zero-mean xi and g sampled on the grid."""
        x = 2.0 * np.pi * np.arange(self.GRID) / self.GRID
        xi = 0.4 * np.cos(x) + 0.2j * np.sin(3 * x)
        g = np.exp(2j * x) - 0.5 * np.sin(x)
        return x, xi, g

    def test_solves_ode(self, data):
        """Test w' + xi w = g + c_tilde with a spectral derivative."""
        _, xi, g = data

        w, c_tilde, _ = periodic_solution(xi, g)

        k = np.fft.fftfreq(self.GRID, d=1.0 / self.GRID)
        dw = np.fft.ifft(1j * k * np.fft.fft(w))
        np.testing.assert_allclose(dw + xi * w, g + c_tilde, atol=1e-10)

    def test_zero_mean(self, data):
        """Test the integration constant removes the mean of w."""
        _, xi, g = data

        w, _, _ = periodic_solution(xi, g)

        assert abs(np.mean(w)) < 1e-10

    def test_c_tilde_consistency(self, data):
        """Test c_tilde is the mean of xi w for zero-mean g."""
        _, xi, g = data

        w, c_tilde, _ = periodic_solution(xi, g)

        assert abs(np.mean(xi * w) - c_tilde) < 1e-10

    def test_zero_xi(self, data):
        """Test xi = 0 gives c_tilde = 0 and the zero-mean antiderivative."""
        x, _, _ = data

        w, c_tilde, _ = periodic_solution(np.zeros(self.GRID), np.cos(x))

        assert abs(c_tilde) < 1e-14
        np.testing.assert_allclose(w, np.sin(x), atol=1e-12)


class TestSolverAgreement:
    """Test the explicit and dense solvers on random data at m = 16."""

    @pytest.mark.parametrize("c", [1.0, 1.0 / 3.0])
    def test_fifty_random_cases(self, c):
        """Test agreement and round trips on 50 random (phi, f, t)."""
        rng = np.random.default_rng(16)
        worst_gap = 0.0
        for seed in range(50):
            phi = random_state(seed=seed, m=16, s=0.0, target_norm=0.5)
            f = random_state(seed=100 + seed, m=16, s=0.0, target_norm=1.0)
            t = float(rng.uniform(0.0, 1.0))

            explicit = invert_explicit(phi, f, t, c)
            dense = invert_dense(phi, f, t, c, 80)

            gap = project(explicit.solution, 80) - dense.solution
            worst_gap = max(worst_gap, sobolev_norm(gap, 0.0))
            assert explicit.residual < 1e-8
            assert dense.residual < 1e-8

        assert worst_gap < 1e-8
