"""Tests for the bound catalog."""

import math

import pytest

from app.exceptions import InvalidParameterError, LemmaRangeError
from app.models.bounds import BoundKind, OperatorId
from app.services.estimates.catalog import (
    BUILDERS,
    DEFAULT_PARAMETERS,
    SUITES,
    bound_spec,
    suite,
)


class TestBoundSpec:
    """Test building validated specs."""

    def test_every_default_is_in_range(self):
        """Test each catalog entry builds with its default parameters."""
        for bound_id in BUILDERS:
            spec = bound_spec(bound_id)
            assert spec.bound_id == bound_id

    def test_defaults_cover_builders(self):
        """Test the defaults and builders name the same bounds."""
        assert set(DEFAULT_PARAMETERS) == set(BUILDERS)

    def test_b3_default(self):
        """Test B3 at s = 0 gains two derivatives with 3 pi^2 / 2."""
        spec = bound_spec("B3")

        assert spec.operator == OperatorId.B3
        assert spec.input_exponents == (0.0, 0.0, 0.0)
        assert spec.output_exponent == 2.0
        assert spec.constant == pytest.approx(1.5 * math.pi**2)
        assert spec.kind == BoundKind.CLOSED

    def test_override(self):
        """Test keyword parameters override the defaults."""
        spec = bound_spec("B2", s=1.0)

        assert spec.input_exponents == (1.0, 1.0)
        assert spec.output_exponent == 2.0
        assert spec.parameters == {"s": 1.0}

    def test_empirical_bound(self):
        """Test bounds without a closed constant are empirical."""
        spec = bound_spec("B21")

        assert spec.constant is None
        assert spec.kind == BoundKind.EMPIRICAL

    @pytest.mark.parametrize(
        "bound_id,params",
        [
            ("B1", {"theta": 1.5}),
            ("B2", {"s": -0.5}),
            ("product", {"s": 0.5}),
            ("B4", {"epsilon": 0.5}),
            ("R30", {"s": 1.5}),
            ("R30", {"n": 2.5}),
            ("R30neg", {"s": -0.5, "alpha": 0.4}),
            ("B41n", {"s": 1.0, "theta0": 0.25}),
        ],
    )
    def test_outside_range(self, bound_id, params):
        """Test parameters outside the validity range are refused."""
        with pytest.raises(LemmaRangeError) as exc_info:
            bound_spec(bound_id, **params)

        assert bound_id in exc_info.value.message

    def test_unknown_bound(self):
        """Test unknown identifiers are refused."""
        with pytest.raises(InvalidParameterError):
            bound_spec("B9")


class TestSuite:
    """Test named suites."""

    def test_default_suite(self):
        """Test the default suite holds only closed bounds."""
        specs = suite("appendix-default")

        assert [s.bound_id for s in specs] == SUITES["appendix-default"]
        assert all(s.kind == BoundKind.CLOSED for s in specs)

    def test_empirical_suite(self):
        """Test the empirical suite holds only empirical bounds."""
        specs = suite("appendix-empirical")

        assert all(s.kind == BoundKind.EMPIRICAL for s in specs)

    def test_override_skips_out_of_range(self):
        """Test an override leaving a range drops that bound."""
        specs = suite("appendix-default", {"s": -1.0})

        assert [s.bound_id for s in specs] == ["B1", "negB2"]

    def test_override_only_where_used(self):
        """Test overrides do not leak into unrelated bounds."""
        specs = suite("appendix-default", {"epsilon": 0.1})
        by_id = {s.bound_id: s for s in specs}

        assert by_id["B4"].parameters["epsilon"] == 0.1
        assert "epsilon" not in by_id["B3"].parameters

    def test_unknown_suite(self):
        """Test unknown suites are refused."""
        with pytest.raises(InvalidParameterError):
            suite("appendix-missing")
