"""Common utility functions used across the application."""

import math

import numpy as np
from scipy.integrate import cumulative_simpson

from app.exceptions import InsufficientSamplesError, InvalidParameterError


def reciprocal(values: np.ndarray) -> np.ndarray:
    """
    Elementwise 1/x with zero where x == 0.

    Args:
        values: Integer or float array

    Returns:
        np.ndarray: Float array of reciprocals
    """
    x = np.asarray(values, dtype=np.float64)
    out = np.zeros_like(x)
    np.divide(1.0, x, out=out, where=x != 0)
    return out


def require_finite(name: str, value: float) -> float:
    """
    Validate that a scalar parameter is finite.

    Raises:
        InvalidParameterError: If the value is NaN or infinite
    """
    if not math.isfinite(value):
        raise InvalidParameterError(f"{name} must be finite, got {value}")
    return value


def cumulative_integral(times: np.ndarray, values: np.ndarray) -> np.ndarray:
    """
    Cumulative integral from times[0] along axis 0 (composite Simpson).

    Args:
        times: Strictly increasing sample times, shape (T,)
        values: Complex samples, shape (T, ...)

    Returns:
        np.ndarray: Integral at every sample, zero at the first one

    Raises:
        InsufficientSamplesError: With fewer than 3 samples
    """
    if len(times) < 3:
        raise InsufficientSamplesError(len(times), 3)
    x = np.asarray(times, dtype=np.float64)
    y = np.asarray(values)
    real = cumulative_simpson(y.real, x=x, axis=0, initial=0.0)
    if not np.iscomplexobj(y):
        return np.asarray(real)
    imag = cumulative_simpson(y.imag, x=x, axis=0, initial=0.0)
    return np.asarray(real + 1j * imag)
