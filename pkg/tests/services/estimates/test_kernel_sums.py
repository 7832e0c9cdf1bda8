"""Tests for the cubed lattice kernel sums."""

import pytest

from app.exceptions import InvalidParameterError
from app.models.bounds import ConvergenceVerdict
from app.services.estimates import k3_sum_estimate


class TestK3SumEstimate:
    """Test the convergence experiment around gamma + delta = 5/3."""

    def test_unweighted_kernel_converges(self):
        """Test gamma = delta = 0 converges."""
        report = k3_sum_estimate(0.0, 0.0, 0.0, 8)

        assert report.verdict == ConvergenceVerdict.CONVERGING
        assert report.cutoffs == [8, 16, 32]
        assert report.expected_ratio == pytest.approx(2.0**-5)
        assert report.notes == []

    def test_partial_sums_increase(self):
        """Test partial sums are nondecreasing in the cutoff."""
        report = k3_sum_estimate(0.5, 0.5, 0.5, 4)

        first, second, third = report.partial_sums
        assert 0.0 < first <= second <= third

    def test_below_threshold_converges(self):
        """Test gamma + delta = 3/2 converges at p = 1."""
        report = k3_sum_estimate(1.0, 0.75, 0.75, 8)

        assert report.verdict == ConvergenceVerdict.CONVERGING
        assert report.increment_ratio < 0.9

    def test_above_threshold_diverges(self):
        """Test gamma + delta = 2 diverges."""
        report = k3_sum_estimate(0.0, 1.0, 1.0, 8)

        assert report.verdict == ConvergenceVerdict.DIVERGING
        assert report.increment_ratio >= 0.9
        assert report.expected_ratio == pytest.approx(2.0)

    def test_near_threshold_inconclusive(self):
        """Test gamma + delta within 0.05 of 5/3 is not decided."""
        report = k3_sum_estimate(0.0, 0.8, 0.85, 4)

        assert report.verdict == ConvergenceVerdict.INCONCLUSIVE
        assert report.notes == ["gamma + delta within 0.05 of 5/3"]

    @pytest.mark.slow
    def test_larger_box(self):
        """Test the verdict is stable at a larger cutoff."""
        report = k3_sum_estimate(0.0, 0.5, 0.5, 64)

        assert report.verdict == ConvergenceVerdict.CONVERGING

    @pytest.mark.parametrize(
        "p,cutoff", [(-0.1, 4), (1.5, 4), (0.5, 0), (0.5, 257)]
    )
    def test_invalid_parameters(self, p, cutoff):
        """Test p, the cutoff and the box size are validated."""
        with pytest.raises(InvalidParameterError):
            k3_sum_estimate(p, 0.0, 0.0, cutoff)

    def test_report_dict(self):
        """Test the verdict is serialised by value."""
        payload = k3_sum_estimate(0.0, 0.0, 0.0, 8).to_dict()

        assert payload["verdict"] == "converging"
        assert payload["cutoffs"] == [8, 16, 32]
