"""Tests for the Fourier-coefficient primitives."""

import math

import numpy as np
import pytest

from app.exceptions import InvalidParameterError, NonHermitianStateError
from app.models.state import FourierState
from app.services.spectrum import (
    dense_sobolev_norm,
    evaluate_series,
    high_pass,
    low_pass,
    mean_coefficient,
    mode_pair,
    project,
    random_state,
    sobolev_norm,
    to_physical,
    u_to_v,
    v_to_u,
)


class TestSobolevNorm:
    """Test homogeneous Sobolev norms."""

    def test_known_value(self):
        """Test the norm against a hand computation."""
        state = FourierState({1: 1.0, -2: 1j, 3: 2.0})

        # 1 + 2^2 + 9 * 4 at s = 1
        assert sobolev_norm(state, 1.0) == pytest.approx(math.sqrt(41))
        assert sobolev_norm(state, 0.0) == pytest.approx(math.sqrt(6))

    def test_negative_index(self):
        """Test negative indices weight high modes down."""
        state = FourierState({4: 1.0})

        assert sobolev_norm(state, -0.5) == pytest.approx(0.5)

    def test_zero_state(self):
        """Test the zero state has norm 0."""
        assert sobolev_norm(FourierState.zero(), 3.0) == 0.0

    def test_non_finite_index(self):
        """Test a non-finite index is refused."""
        with pytest.raises(InvalidParameterError):
            sobolev_norm(FourierState({1: 1.0}), float("nan"))

    def test_dense_agrees(self, complex_state):
        """Test the dense norm matches the sparse one."""
        dense = complex_state.to_dense(5)

        assert float(dense_sobolev_norm(dense, 0.7)) == pytest.approx(
            sobolev_norm(complex_state, 0.7)
        )


class TestProjections:
    """Test sharp Fourier projections."""

    def test_low_and_high_partition(self, complex_state):
        """Test low + high recovers the state."""
        low = project(complex_state, 2, "low")
        high = project(complex_state, 2, "high")

        assert set(low) == {-1, 2}
        assert set(high) == {-3, 4}
        assert low + high == complex_state

    def test_zero_side(self, pair_state):
        """Test the k=0 projection of zero-mean data is empty."""
        projected = project(pair_state, 3, "zero")

        assert len(projected) == 0
        assert mean_coefficient(pair_state) == 0j

    def test_keeps_real_flag(self, pair_state):
        """Test projections preserve Hermitian symmetry."""
        assert project(pair_state, 1).real_valued

    def test_negative_cutoff(self, pair_state):
        """Test a negative cutoff is refused."""
        with pytest.raises(InvalidParameterError):
            project(pair_state, -1)

    def test_dense_passes(self):
        """Test low_pass / high_pass on dense arrays."""
        dense = np.arange(1, 8, dtype=np.complex128)

        np.testing.assert_array_equal(
            low_pass(dense, 1), [0, 0, 3, 4, 5, 0, 0]
        )
        np.testing.assert_array_equal(
            high_pass(dense, 2), [1, 0, 0, 0, 0, 0, 7]
        )


class TestGauge:
    """Test the interaction representation."""

    def test_u_to_v_phases(self):
        """Test v_k = exp(i k^3 t) u_k."""
        state = FourierState({2: 1.0})
        t = 0.25

        v = u_to_v(state, t)

        assert v[2] == pytest.approx(np.exp(8j * t))
        assert v_to_u(state, t)[2] == pytest.approx(np.exp(-8j * t))

    def test_unit_mode_half_turn(self):
        """Test k = 1 at t = pi picks up a factor -1."""
        v = u_to_v(FourierState({1: 0.5}), np.pi)

        assert v[1] == pytest.approx(-0.5)

    def test_round_trip(self, complex_state):
        """Test v_to_u inverts u_to_v."""
        back = v_to_u(u_to_v(complex_state, 1.3), 1.3)

        assert back.allclose(complex_state, tol=1e-14)

    def test_preserves_hermitian(self, pair_state):
        """Test the gauge maps real data to real data."""
        assert u_to_v(pair_state, 0.7).is_hermitian()


class TestPhysicalSpace:
    """Test evaluation on grids."""

    def test_evaluate_series(self):
        """Test direct evaluation of a cosine."""
        state = FourierState.hermitian({1: 0.5})
        x = np.array([0.0, np.pi / 2, np.pi])

        values = evaluate_series(state, x)

        np.testing.assert_allclose(values, [1.0, 0.0, -1.0], atol=1e-15)

    def test_to_physical(self):
        """Test real samples on the uniform grid."""
        state = mode_pair(2, 0.5j)
        values = to_physical(state, 8)

        x = 2 * np.pi * np.arange(8) / 8
        np.testing.assert_allclose(values, -np.sin(2 * x), atol=1e-14)

    def test_under_resolved_grid(self):
        """Test a grid of at most 2 * support points is refused."""
        with pytest.raises(InvalidParameterError):
            to_physical(mode_pair(4, 1.0), 8)

    def test_non_hermitian(self):
        """Test complex-valued data cannot be sampled as real."""
        with pytest.raises(NonHermitianStateError):
            to_physical(FourierState({1: 1.0}), 8)


class TestRandomState:
    """Test reproducible random data."""

    def test_norm_and_support(self):
        """Test the target norm and support bound."""
        state = random_state(seed=3, m=10, s=1.0, target_norm=2.0)

        assert state.real_valued
        assert state.support_bound <= 10
        assert sobolev_norm(state, 1.0) == pytest.approx(2.0)

    def test_reproducible(self):
        """Test the same seed gives the same state."""
        assert random_state(5, 8, 0.0, 1.0) == random_state(5, 8, 0.0, 1.0)
        assert random_state(5, 8, 0.0, 1.0) != random_state(6, 8, 0.0, 1.0)

    def test_zero_norm(self):
        """Test a zero target gives the zero state."""
        assert len(random_state(1, 4, 0.0, 0.0)) == 0

    def test_invalid_arguments(self):
        """Test invalid sizes and norms are refused."""
        with pytest.raises(InvalidParameterError):
            random_state(0, 0, 0.0, 1.0)
        with pytest.raises(InvalidParameterError):
            random_state(0, 4, 0.0, -1.0)

    def test_mode_pair(self):
        """Test mode_pair builds a conjugate pair."""
        state = mode_pair(3, 1 + 1j)

        assert dict(state.modes) == {-3: 1 - 1j, 3: 1 + 1j}
