"""Fourier-coefficient primitives: norms, projections, gauge, sampling."""

import logging
import math
from enum import Enum
from typing import Optional, Union

import numpy as np

from app.exceptions import (
    InvalidParameterError,
    NonHermitianStateError,
)
from app.models.state import FourierState
from app.services.operators.phases import phase_factor
from app.utils.common import require_finite

logger = logging.getLogger(__name__)


class ProjectionSide(str, Enum):
    """Which part of the spectrum a projection keeps."""

    LOW = "low"
    HIGH = "high"
    ZERO = "zero"


def sobolev_norm(state: FourierState, s: float) -> float:
    """
    Homogeneous Sobolev norm (sum_k |k|^{2s} |v_k|^2)^{1/2}.

    Args:
        state: Zero-mean state
        s: Sobolev index, any real

    Returns:
        float: The norm, 0 for the zero state

    Raises:
        InvalidParameterError: If s is not finite
    """
    require_finite("s", s)
    if not len(state):
        return 0.0
    ks = np.abs(np.fromiter(state.modes.keys(), dtype=np.float64))
    values = np.fromiter(state.modes.values(), dtype=np.complex128)
    return math.sqrt(float(np.sum(ks ** (2.0 * s) * np.abs(values) ** 2)))


def dense_sobolev_norm(array: np.ndarray, s: float = 0.0) -> np.ndarray:
    """
    Sobolev norm of dense arrays indexed by k + bound along the last axis.

    Args:
        array: Dense coefficients, k=0 entry ignored
        s: Sobolev index

    Returns:
        np.ndarray: Norms over the leading axes (a 0-d array for 1-D input)
    """
    bound = array.shape[-1] // 2
    k = np.abs(np.arange(-bound, bound + 1, dtype=np.float64))
    weights = np.zeros_like(k)
    weights[k > 0] = k[k > 0] ** (2.0 * s)
    return np.sqrt(np.sum(weights * np.abs(array) ** 2, axis=-1))


def project(
    state: FourierState,
    m: int,
    side: Union[ProjectionSide, str] = ProjectionSide.LOW,
) -> FourierState:
    """
    Sharp Fourier projection.

    Args:
        state: Input state
        m: Cutoff, m >= 0
        side: "low" keeps |k| <= m, "high" keeps |k| > m, "zero" keeps
            the k=0 mode (always the empty state for zero-mean data)

    Returns:
        FourierState: Projected state with the same real_valued flag
    """
    if m < 0:
        raise InvalidParameterError(f"Projection cutoff must be >= 0, got {m}")
    side = ProjectionSide(side)
    if side is ProjectionSide.ZERO:
        return FourierState({}, real_valued=state.real_valued)
    if side is ProjectionSide.LOW:
        kept = {k: z for k, z in state.items() if abs(k) <= m}
    else:
        kept = {k: z for k, z in state.items() if abs(k) > m}
    return FourierState(kept, real_valued=state.real_valued)


def mean_coefficient(state: FourierState) -> complex:
    """The k=0 coefficient, zero by construction."""
    return 0j


def low_pass(array: np.ndarray, m: int) -> np.ndarray:
    """Dense counterpart of project(..., "low") on the last axis."""
    bound = array.shape[-1] // 2
    k = np.abs(np.arange(-bound, bound + 1))
    return np.where(k <= m, array, 0)


def high_pass(array: np.ndarray, n: int) -> np.ndarray:
    """Dense counterpart of project(..., "high") on the last axis."""
    bound = array.shape[-1] // 2
    k = np.abs(np.arange(-bound, bound + 1))
    return np.where(k > n, array, 0)


def _gauge(state: FourierState, t: float, sign: int) -> FourierState:
    if not len(state):
        return state
    ks = np.fromiter(state.modes.keys(), dtype=np.int64)
    values = np.fromiter(state.modes.values(), dtype=np.complex128)
    factors = phase_factor(sign * ks**3, t)
    modes = dict(zip(ks.tolist(), (factors * values).tolist()))
    return FourierState(modes, real_valued=state.real_valued)


def u_to_v(state: FourierState, t: float) -> FourierState:
    """Interaction representation v_k = exp(i k^3 t) u_k."""
    require_finite("t", t)
    return _gauge(state, t, 1)


def v_to_u(state: FourierState, t: float) -> FourierState:
    """Inverse gauge u_k = exp(-i k^3 t) v_k."""
    require_finite("t", t)
    return _gauge(state, t, -1)


def evaluate_series(state: FourierState, x: np.ndarray) -> np.ndarray:
    """
    Direct evaluation of sum_k v_k exp(i k x).

    Args:
        state: Coefficients
        x: Real or complex sample points

    Returns:
        np.ndarray: Complex values at x
    """
    points = np.asarray(x)
    if not len(state):
        return np.zeros(points.shape, dtype=np.complex128)
    ks = np.fromiter(state.modes.keys(), dtype=np.float64)
    values = np.fromiter(state.modes.values(), dtype=np.complex128)
    return np.asarray(np.exp(1j * np.multiply.outer(points, ks)) @ values)


def to_physical(state: FourierState, grid: int) -> np.ndarray:
    """
    Sample a real-valued state on the uniform grid x_j = 2 pi j / grid.

    Args:
        state: Hermitian state
        grid: Number of points, must exceed 2 * support_bound

    Returns:
        np.ndarray: Real samples

    Raises:
        NonHermitianStateError: If the state is not Hermitian
        InvalidParameterError: If the grid under-resolves the support
    """
    if not (state.real_valued or state.is_hermitian()):
        raise NonHermitianStateError(state.hermitian_defect())
    if grid <= 2 * state.support_bound:
        raise InvalidParameterError(
            f"Grid of {grid} points cannot resolve support bound "
            f"{state.support_bound}"
        )
    x = 2.0 * np.pi * np.arange(grid) / grid
    values = evaluate_series(state, x)
    residue = float(np.max(np.abs(values.imag), initial=0.0))
    scale = max(1.0, float(np.max(np.abs(values), initial=0.0)))
    if residue > 1e-12 * scale:
        logger.warning(f"Imaginary residue {residue:.3e} in to_physical")
    else:
        logger.debug(f"Imaginary residue {residue:.3e} in to_physical")
    return np.asarray(values.real)


def random_state(
    seed: int,
    m: int,
    s: float,
    target_norm: float,
    decay: Optional[float] = None,
) -> FourierState:
    """
    Reproducible random Hermitian state supported in 1 <= |k| <= m.

    Each positive mode gets a complex Gaussian of scale |k|^{-decay-1/2}
    (decay defaults to s); the result is rescaled so that its Sobolev
    norm at index s equals target_norm.

    Args:
        seed: Seed for numpy's default_rng
        m: Support bound, m >= 1
        s: Index of the normalising norm
        target_norm: Desired norm, >= 0
        decay: Optional spectral decay exponent

    Returns:
        FourierState: Real-valued random state
    """
    if m < 1:
        raise InvalidParameterError(f"m must be >= 1, got {m}")
    if target_norm < 0 or not math.isfinite(target_norm):
        raise InvalidParameterError(
            f"target_norm must be finite and >= 0, got {target_norm}"
        )
    require_finite("s", s)
    rng = np.random.default_rng(seed)
    k = np.arange(1, m + 1, dtype=np.float64)
    exponent = s if decay is None else decay
    scale = k ** (-exponent - 0.5)
    z = (rng.standard_normal(m) + 1j * rng.standard_normal(m)) / math.sqrt(2)
    state = FourierState.hermitian(
        dict(zip(range(1, m + 1), (scale * z).tolist()))
    )
    norm = sobolev_norm(state, s)
    if norm == 0:
        return state
    return state * (target_norm / norm)


def mode_pair(k: int, amplitude: complex) -> FourierState:
    """Real-valued datum with v_k = amplitude and v_{-k} = conj(amplitude)."""
    return FourierState.hermitian({k: amplitude})
