"""Centralized exception definitions for the application.

This module provides a consistent exception hierarchy that maps to process
exit codes and provides reusable error messages across all services and
CLI subcommands.
"""

from typing import Optional


class KdVLabError(Exception):
    """Base exception for all laboratory errors.

    All domain exceptions should inherit from this class so that the CLI
    can translate them into a stable exit status.
    """

    def __init__(
        self,
        message: str,
        detail: Optional[str] = None,
        exit_code: int = 1,
    ):
        """Initialize the exception.

        Args:
            message: Human-readable error message
            detail: Optional detailed error information
            exit_code: Process exit status reported by the CLI
        """
        self.message = message
        self.detail = detail or message
        self.exit_code = exit_code
        super().__init__(self.message)


# Category exceptions
class ValidationError(KdVLabError):
    """Raised when an input violates a documented precondition."""

    def __init__(self, message: str, detail: Optional[str] = None):
        super().__init__(message, detail, exit_code=1)


class NumericalError(KdVLabError):
    """Raised when a computation fails to produce a trustworthy result."""

    def __init__(self, message: str, detail: Optional[str] = None):
        super().__init__(message, detail, exit_code=1)


class BoundFailureError(KdVLabError):
    """Raised in strict mode when an empirical ratio exceeds its constant."""

    def __init__(
        self,
        bound_id: str,
        max_ratio: float,
        constant: float,
        detail: Optional[str] = None,
    ):
        message = (
            f"Bound '{bound_id}' failed: max ratio {max_ratio:.6g} "
            f"exceeds constant {constant:.6g}"
        )
        self.bound_id = bound_id
        self.max_ratio = max_ratio
        self.constant = constant
        super().__init__(message, detail, exit_code=2)


# Domain-Specific Exceptions


# Parameter and state exceptions
class InvalidParameterError(ValidationError):
    """Raised when a numeric parameter is out of range."""

    def __init__(self, message: str, detail: Optional[str] = None):
        super().__init__(message, detail)


class InvalidStateError(ValidationError):
    """Raised when a Fourier state violates its structural invariants."""

    def __init__(self, message: str, detail: Optional[str] = None):
        super().__init__(message, detail)


class NonHermitianStateError(InvalidStateError):
    """Raised when a real-valued state is not Hermitian symmetric."""

    def __init__(self, defect: float, detail: Optional[str] = None):
        message = (
            f"State is not Hermitian symmetric (defect {defect:.3e}); "
            "v_{-k} must equal conj(v_k)"
        )
        self.defect = defect
        super().__init__(message, detail)


class LemmaRangeError(ValidationError):
    """Raised when a bound is evaluated outside its parameter range."""

    def __init__(
        self, bound_id: str, condition: str, detail: Optional[str] = None
    ):
        message = (
            f"Parameters outside the validity range of '{bound_id}': "
            f"{condition}"
        )
        self.bound_id = bound_id
        self.condition = condition
        super().__init__(message, detail)


class InsufficientSamplesError(ValidationError):
    """Raised when a trajectory has too few samples for quadrature."""

    def __init__(
        self, available: int, required: int, detail: Optional[str] = None
    ):
        message = (
            f"Trajectory has {available} samples, at least {required} "
            "are required"
        )
        super().__init__(message, detail)


# Numerical exceptions
class DivergenceError(NumericalError):
    """Raised when the truncated evolution blows up or produces NaN."""

    def __init__(
        self,
        step: int,
        time: float,
        amplitude: float,
        detail: Optional[str] = None,
    ):
        message = (
            f"Integration diverged at step {step} (t={time:.6g}, "
            f"max amplitude {amplitude:.3e})"
        )
        self.step = step
        self.time = time
        self.amplitude = amplitude
        super().__init__(message, detail)


class SingularOperatorError(NumericalError):
    """Raised when a linear operator is numerically singular."""

    def __init__(self, message: str, detail: Optional[str] = None):
        super().__init__(message, detail)


class PeriodicityDefectError(NumericalError):
    """Raised when the gauge integrating factor is not periodic."""

    def __init__(self, defect: float, detail: Optional[str] = None):
        message = (
            f"Integrating factor is not periodic (defect {defect:.3e})"
        )
        self.defect = defect
        super().__init__(message, detail)


class NonContractionError(NumericalError):
    """Raised when a fixed-point iteration fails to contract."""

    def __init__(
        self,
        iterations: int,
        last_difference: float,
        detail: Optional[str] = None,
    ):
        message = (
            f"Fixed-point iteration did not converge after {iterations} "
            f"iterations (last difference {last_difference:.3e})"
        )
        self.iterations = iterations
        self.last_difference = last_difference
        super().__init__(message, detail)


# Service-level exceptions (these wrap other errors)
class ServiceError(KdVLabError):
    """Base exception for service-level errors."""

    def __init__(
        self, service_name: str, message: str, detail: Optional[str] = None
    ):
        full_message = f"{service_name} error: {message}"
        super().__init__(full_message, detail, exit_code=1)


class SimulationError(ServiceError):
    """Raised when a truncated-system simulation fails."""

    def __init__(self, message: str, detail: Optional[str] = None):
        super().__init__("Simulation service", message, detail)


class InversionError(ServiceError):
    """Raised when the linearised operator cannot be inverted."""

    def __init__(self, message: str, detail: Optional[str] = None):
        super().__init__("Inversion service", message, detail)


class EstimatesError(ServiceError):
    """Raised when a bound batch fails for an unexpected reason."""

    def __init__(self, message: str, detail: Optional[str] = None):
        super().__init__("Estimates service", message, detail)


class BurgersError(ServiceError):
    """Raised when a Burgers characteristic computation fails."""

    def __init__(self, message: str, detail: Optional[str] = None):
        super().__init__("Burgers service", message, detail)
