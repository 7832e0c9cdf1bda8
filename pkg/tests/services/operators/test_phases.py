"""Tests for the integer phase functions."""

import cmath

import numpy as np

from app.services.operators.phases import (
    PhaseCache,
    bilinear_phase,
    cubic_phase,
    phase_factor,
    quartic_phase,
)


def _grid(bound):
    k = np.arange(-bound, bound + 1, dtype=np.int64)
    return np.meshgrid(k, k, k, indexing="ij")


class TestPhaseIdentities:
    """Test the factorised phases against their cubic definitions."""

    def test_cubic_phase_identity(self):
        """Test 3(k1+k2)(k2+k3)(k3+k1) = k^3 - k1^3 - k2^3 - k3^3."""
        k1, k2, k3 = _grid(50)
        total = k1 + k2 + k3

        expected = total**3 - k1**3 - k2**3 - k3**3

        np.testing.assert_array_equal(cubic_phase(k1, k2, k3), expected)

    def test_bilinear_phase_identity(self):
        """Test 3 k k1 k2 = k^3 - k1^3 - k2^3 with k = k1 + k2."""
        k = np.arange(-50, 51, dtype=np.int64)
        k1, k2 = np.meshgrid(k, k, indexing="ij")

        expected = (k1 + k2) ** 3 - k1**3 - k2**3

        np.testing.assert_array_equal(bilinear_phase(k1, k2), expected)

    def test_quartic_phase_splits_through_pair(self):
        """Test the quartic phase is cubic(k1, k2, p) + 3 p k3 k4."""
        rng = np.random.default_rng(0)
        k1, k2, k3, k4 = rng.integers(-50, 51, size=(4, 2000))
        p = k3 + k4

        split = cubic_phase(k1, k2, p) + bilinear_phase(k3, k4)

        np.testing.assert_array_equal(quartic_phase(k1, k2, k3, k4), split)

    def test_resonant_triples_have_zero_phase(self):
        """Test the phase vanishes exactly on resonant triples."""
        k1, k2, k3 = _grid(12)
        resonant = (k1 + k2) * (k2 + k3) * (k3 + k1) == 0

        assert np.all(cubic_phase(k1, k2, k3)[resonant] == 0)
        assert np.all(cubic_phase(k1, k2, k3)[~resonant] != 0)


class TestPhaseFactor:
    """Test the accurate evaluation of exp(i theta t)."""

    def test_matches_cmath(self):
        """Test small phases agree with cmath."""
        theta = np.array([-7, 0, 3, 120])

        values = phase_factor(theta, 0.25)

        expected = [cmath.exp(1j * th * 0.25) for th in theta.tolist()]
        np.testing.assert_allclose(values, expected, rtol=0, atol=1e-14)

    def test_time_zero(self):
        """Test t = 0 gives ones."""
        np.testing.assert_array_equal(
            phase_factor(np.array([5, -9]), 0.0), [1.0, 1.0]
        )

    def test_unit_modulus_for_large_phases(self):
        """Test large phases still give unit factors."""
        theta = np.array([3 * 10**12, -(10**13)])

        values = phase_factor(theta, 1.7)

        np.testing.assert_allclose(np.abs(values), 1.0, atol=1e-14)

    def test_periodicity(self):
        """Test exp(i theta t) is 2 pi periodic in theta t."""
        theta = np.array([4])
        period = 2 * np.pi / 4

        np.testing.assert_allclose(
            phase_factor(theta, 0.3),
            phase_factor(theta, 0.3 + period),
            atol=1e-12,
        )


class TestPhaseCache:
    """Test memoised phase factors."""

    def test_cache_reuses_values(self):
        """Test repeated phases are evaluated once."""
        cache = PhaseCache(0.25)
        theta = np.array([[1, 2], [2, 1]])

        values = cache(theta)

        assert values.shape == (2, 2)
        assert len(cache) == 2
        assert values[0, 1] == values[1, 0]
        assert cache.factor(1) == values[0, 0]
        assert len(cache) == 2
