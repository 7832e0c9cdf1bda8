"""Tests for the empirical Lipschitz probe."""

import math

import numpy as np
import pytest

from app.models.simulation import SimConfig
from app.services.galerkin.lipschitz import growth_rate, lipschitz_probe
from app.services.spectrum import mode_pair, random_state


@pytest.fixture
def cfg():
    return SimConfig(m=6, dt=1e-3, T=0.05, record_stride=5)


class TestGrowthRate:
    """Test the exponential growth fit."""

    def test_exact_exponential(self):
        """Test the smallest C with ratio <= exp(C t)."""
        times = np.array([0.0, 1.0, 2.0])
        ratios = np.array([1.0, math.e, math.e**4])

        assert growth_rate(times, ratios) == pytest.approx(2.0)

    def test_contracting_ratios(self):
        """Test ratios below one give a zero rate."""
        times = np.array([0.0, 0.5, 1.0])

        assert growth_rate(times, np.array([1.0, 0.9, 0.8])) == 0.0

    def test_no_positive_times(self):
        """Test a single sample at t = 0 gives zero."""
        assert growth_rate(np.array([0.0]), np.array([1.0])) == 0.0


class TestLipschitzProbe:
    """Test the two-run comparison."""

    def test_identical_data_degenerate(self, cfg):
        """Test identical data gives a degenerate report of zeros."""
        v0 = mode_pair(1, 0.1)

        report = lipschitz_probe(v0, v0, 0.0, cfg)

        assert report.degenerate
        assert report.max_ratio == 0.0
        assert report.notes == ["identical initial data"]

    @pytest.mark.parametrize("theta", [-0.5, 0.0, 1.0])
    def test_ratio_starts_at_one(self, cfg, theta):
        """Test the ratio is 1 at t = 0 and stays moderate."""
        v0 = mode_pair(1, 0.1)
        w0 = v0 + random_state(seed=1, m=6, s=0.0, target_norm=1e-3)

        report = lipschitz_probe(v0, w0, theta, cfg)

        assert not report.degenerate
        assert report.ratios[0] == pytest.approx(1.0)
        assert report.max_ratio < 2.0
        assert report.growth_rate >= 0.0
        assert len(report.times) == len(report.ratios)

    def test_report_dict(self, cfg):
        """Test the report serialises its summary."""
        v0 = mode_pair(1, 0.1)
        w0 = mode_pair(1, 0.101)

        payload = lipschitz_probe(v0, w0, 0.0, cfg).to_dict()

        assert payload["theta"] == 0.0
        assert payload["samples"] == 11
        assert payload["degenerate"] is False
