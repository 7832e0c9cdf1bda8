"""Tests for the rotating complex Burgers characteristics."""

import cmath
import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from app.exceptions import InvalidParameterError
from app.models.burgers import AnalyticProfile
from app.services.burgers import (
    blowup_scan,
    equation_residual,
    lam,
    omega_sweep,
    rotation_threshold,
    solve_implicit,
)


def _samples(count):
    return 2 * np.pi * np.arange(count) / count


class TestLambda:
    """Test lambda(t) = (exp(i Omega t) - 1) / (i Omega)."""

    def test_no_rotation(self):
        """Test lambda(t) = t at Omega = 0."""
        assert lam(0.7, 0.0) == 0.7

    def test_small_rotation_series(self):
        """Test the series branch agrees with the closed form."""
        omega = 1e-3
        closed = (cmath.exp(1j * omega * 2.0) - 1) / (1j * omega)

        assert lam(2.0, 1e-7) == pytest.approx(2.0 + 2e-7j, abs=1e-12)
        assert lam(2.0, omega) == pytest.approx(closed, abs=1e-12)

    def test_periodic_and_bounded(self):
        """Test lambda is periodic with |lambda| <= 2 / |Omega|."""
        omega = 3.0
        times = np.linspace(0, 10, 101)

        assert abs(lam(2 * np.pi / omega, omega)) < 1e-14
        assert max(abs(lam(t, omega)) for t in times) <= 2 / omega + 1e-15


class TestSolveImplicit:
    """Test the characteristic equation v = phi(z - lambda v)."""

    def test_linear_closed_form(self):
        """Test phi = -z gives v = -z / (1 - t)."""
        phi = AnalyticProfile.linear(-1.0)
        z = np.array([0.3, -1.2, 0.5 + 0.2j])

        solution = solve_implicit(phi, z, 0.5, 0.0)

        assert solution.converged
        np.testing.assert_allclose(solution.v, -2 * z, atol=1e-11)
        np.testing.assert_allclose(solution.denominator, 0.5, atol=1e-15)
        np.testing.assert_allclose(solution.dz_v, -2.0, atol=1e-14)

    def test_newton_fallback(self):
        """Test slow fixed points switch to Newton and still converge."""
        phi = AnalyticProfile.linear(-1.0)

        solution = solve_implicit(phi, [0.4], 0.98, 0.0)

        assert solution.converged
        assert solution.method == "newton"
        assert solution.v[0] == pytest.approx(-0.4 / 0.02, rel=1e-10)

    def test_matches_characteristic_ode(self):
        """Test v against the characteristic ODE for zeta."""
        phi = AnalyticProfile.sine(0.1, 0.5)
        omega = 3.0
        t = 0.25
        z = np.array([0.0, 0.7, 2.0 + 0.1j, 4.0 - 0.2j])

        def rhs(time, zeta):
            lam_t = lam(time, omega)
            rate = cmath.exp(1j * omega * time)
            return -rate * phi(zeta) / (1 + lam_t * phi.dphi(zeta))

        ode = solve_ivp(
            rhs, (0.0, t), z.astype(complex), rtol=1e-12, atol=1e-14
        )
        expected = phi(ode.y[:, -1])

        solution = solve_implicit(phi, z, t, omega)

        np.testing.assert_allclose(solution.v, expected, atol=1e-8)

    def test_point_outside_strip(self):
        """Test sample points outside the strip are refused."""
        phi = AnalyticProfile.sine(0.1, 0.5)

        with pytest.raises(InvalidParameterError):
            solve_implicit(phi, [0.6j], 0.1, 0.0)

    def test_equation_residual(self):
        """Test u = exp(i Omega t) v solves the rotating Burgers equation."""
        phi = AnalyticProfile.sine(0.1, 0.5)

        residual = equation_residual(phi, _samples(8), 0.5, 2.0)

        assert residual < 1e-6

    def test_equation_residual_needs_room(self):
        """Test the central difference needs t >= h."""
        phi = AnalyticProfile.sine(0.1, 0.5)

        with pytest.raises(InvalidParameterError):
            equation_residual(phi, [0.0], 0.0, 1.0)


class TestBlowupScan:
    """Test detection of gradient blow-up."""

    def test_linear_blowup_time(self):
        """Test phi = -z blows up at t* = 1."""
        phi = AnalyticProfile.linear(-1.0)

        result = blowup_scan(phi, 0.0, [0.3, -0.5], T=1.5, step=0.01)

        assert result.blew_up
        assert result.t_star == pytest.approx(1.0, abs=1e-6)
        assert result.t_threshold < result.t_star

    def test_sine_blowup_at_origin(self):
        """Test phi = -sin z blows up at t* = 1 with witness z = 0."""
        phi = AnalyticProfile.sine(-1.0, 0.5)

        result = blowup_scan(phi, 0.0, _samples(64), T=1.5, step=0.01)

        assert result.blew_up
        assert result.t_star == pytest.approx(1.0, abs=1e-4)
        assert result.z_witness == 0

    def test_fast_rotation_prevents_blowup(self):
        """Test |Omega| > 2 sup|phi'| keeps the denominator above 1/2."""
        phi = AnalyticProfile.sine(math.exp(-0.5), 0.5)
        omega = 4.0
        assert omega > rotation_threshold(phi)

        result = blowup_scan(phi, omega, _samples(16), T=100.0, step=0.05)

        assert not result.blew_up
        assert result.t_star is None
        assert result.min_denominator >= 0.5 - 1e-6

    def test_invalid_arguments(self):
        """Test T, threshold and samples are validated."""
        phi = AnalyticProfile.sine(0.1, 0.5)

        with pytest.raises(InvalidParameterError):
            blowup_scan(phi, 0.0, [0.0], T=0.0)
        with pytest.raises(InvalidParameterError):
            blowup_scan(phi, 0.0, [0.0], T=1.0, threshold=0.0)
        with pytest.raises(InvalidParameterError):
            blowup_scan(phi, 0.0, [], T=1.0)


class TestOmegaSweep:
    """Test scans over rotation rates."""

    def test_sorted_by_magnitude(self):
        """Test results come back in ascending |Omega|."""
        phi = AnalyticProfile.sine(0.3, 0.5)

        results = omega_sweep(phi, [4.0, 0.0], _samples(8), T=1.0, step=0.05)

        assert len(results) == 2
        assert not any(result.blew_up for result in results)
        # Omega = 0 first: min over z of 1 - 0.3 t cos(z) at t = 1
        assert results[0].min_denominator == pytest.approx(0.7, abs=1e-9)
