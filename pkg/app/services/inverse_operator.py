"""Inversion of the linearised operator L v = v - c B2(phi, v)(t).

Two independent solvers are provided: an explicit one that reduces the
equation to a first-order periodic ODE solved with an integrating
factor, and a dense truncated linear solve used as its oracle.
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from app.exceptions import (
    InvalidParameterError,
    InversionError,
    KdVLabError,
    NumericalError,
    PeriodicityDefectError,
    SingularOperatorError,
)
from app.models.inversion import InversionMethod, InversionReport
from app.models.state import FourierState
from app.services.operators.multilinear import b2
from app.services.operators.phases import PhaseCache
from app.services.spectrum import project, sobolev_norm, u_to_v, v_to_u

logger = logging.getLogger(__name__)

PERIODICITY_TOLERANCE = 1e-10
DENOMINATOR_FLOOR = 1e-30
CONDITION_LIMIT = 1e12


def apply_L(
    phi: FourierState, v: FourierState, t: float, c: float
) -> FourierState:
    """v - c * b2(phi, v, t)."""
    return v - c * b2(phi, v, t)


def mode_indices(M: int) -> np.ndarray:
    """Wavenumbers -M..-1, 1..M in matrix order."""
    k = np.arange(-M, M + 1, dtype=np.int64)
    return k[k != 0]


def assemble_matrix(
    phi: FourierState, t: float, c: float, M: int
) -> np.ndarray:
    """
    Matrix of L on the modes 0 < |k| <= M.

    A[k, j] = delta_kj - c exp(3 i k (k-j) j t) phi_{k-j} / ((k-j) j)

    Args:
        phi: Coefficient state
        t: Time
        c: Scalar coefficient
        M: Truncation of the mode space

    Returns:
        np.ndarray: Complex (2M, 2M) matrix in mode_indices order
    """
    if M < 1:
        raise InvalidParameterError(f"M must be >= 1, got {M}")
    ks = mode_indices(M)
    K, J = np.meshgrid(ks, ks, indexing="ij")
    diff = K - J
    coeffs = np.zeros(diff.shape, dtype=np.complex128)
    for q, value in phi.items():
        coeffs[diff == q] = value
    active = coeffs != 0
    phases = np.zeros(diff.shape, dtype=np.complex128)
    if np.any(active):
        cache = PhaseCache(t)
        phases[active] = cache(3 * K[active] * diff[active] * J[active])
    denom = (diff * J).astype(np.float64)
    entries = np.zeros(diff.shape, dtype=np.complex128)
    entries[active] = coeffs[active] * phases[active] / denom[active]
    return np.eye(len(ks), dtype=np.complex128) - c * entries


def _state_vector(state: FourierState, M: int) -> np.ndarray:
    return np.array([state[int(k)] for k in mode_indices(M)])


def _vector_state(vector: np.ndarray, M: int) -> FourierState:
    return FourierState(dict(zip(mode_indices(M).tolist(), vector.tolist())))


def invert_dense(
    phi: FourierState, f: FourierState, t: float, c: float, M: int
) -> InversionReport:
    """
    Solve L v = f on the modes 0 < |k| <= M by LU factorisation.

    Args:
        phi: Coefficient state, support bound <= M
        f: Right-hand side; modes beyond M are dropped with a warning
        t: Time
        c: Scalar coefficient
        M: Truncation size

    Returns:
        InversionReport: Solution, residual and condition number

    Raises:
        SingularOperatorError: If the matrix is numerically singular
        InversionError: For unexpected failures
    """
    if M < phi.support_bound:
        raise InvalidParameterError(
            f"M={M} is below the support bound {phi.support_bound} of phi"
        )
    tail = project(f, M, "high")
    tail_norm = sobolev_norm(tail, 0.0)
    if tail_norm > 0:
        logger.warning(
            f"Right-hand side has a tail of norm {tail_norm:.3e} beyond "
            f"M={M}; it is ignored by the dense solve"
        )
    try:
        matrix = assemble_matrix(phi, t, c, M)
        condition = float(np.linalg.cond(matrix))
        if not math.isfinite(condition) or condition > CONDITION_LIMIT:
            raise SingularOperatorError(
                f"L is numerically singular (condition {condition:.3e})"
            )
        lu, piv = lu_factor(matrix)
        vector = lu_solve((lu, piv), _state_vector(f, M))
    except KdVLabError:
        raise
    except Exception as e:
        logger.error(f"Dense inversion failed: {e}", exc_info=True)
        raise InversionError(str(e)) from e

    solution = _vector_state(vector, M)
    if phi.real_valued and f.real_valued:
        solution = solution.symmetrized()
    residual = sobolev_norm(apply_L(phi, solution, t, c) - f, 0.0)
    logger.debug(
        f"Dense inversion M={M}: condition {condition:.3e}, "
        f"residual {residual:.3e}"
    )
    return InversionReport(
        solution=solution,
        method=InversionMethod.DENSE,
        residual=residual,
        c=c,
        t=t,
        cutoff=M,
        condition=condition,
        tail_norm=tail_norm,
    )


def inverse_norm(phi: FourierState, t: float, c: float, M: int) -> float:
    """Spectral norm of the inverse of the truncated matrix."""
    singular = np.linalg.svd(assemble_matrix(phi, t, c, M), compute_uv=False)
    smallest = float(singular[-1])
    if smallest == 0:
        raise SingularOperatorError(
            "Truncated matrix has a zero singular value"
        )
    return 1.0 / smallest


def inverse_norm_sweep(
    phi: FourierState, amplitudes: List[float], t: float, c: float, M: int
) -> List[Tuple[float, float]]:
    """(amplitude, ||L^{-1}||) for phi scaled by each amplitude."""
    return [(a, inverse_norm(a * phi, t, c, M)) for a in amplitudes]


def _to_grid(state: FourierState, grid: int) -> np.ndarray:
    """FFT-ordered coefficient array of length grid."""
    coeffs = np.zeros(grid, dtype=np.complex128)
    for k, z in state.items():
        coeffs[k % grid] = z
    return coeffs


def _wavenumbers(grid: int) -> np.ndarray:
    return np.fft.fftfreq(grid, d=1.0 / grid)


def _antiderivative(coeffs: np.ndarray) -> np.ndarray:
    """Zero-mean antiderivative in coefficient space (division by ik)."""
    k = _wavenumbers(coeffs.size)
    out = np.zeros_like(coeffs)
    nonzero = k != 0
    out[nonzero] = coeffs[nonzero] / (1j * k[nonzero])
    return out


def _synthesis(coeffs: np.ndarray) -> np.ndarray:
    return np.fft.ifft(coeffs) * coeffs.size


def _analysis(values: np.ndarray) -> np.ndarray:
    return np.fft.fft(values) / values.size


def periodic_solution(
    xi: np.ndarray, g: np.ndarray
) -> Tuple[np.ndarray, complex, complex]:
    """
    Zero-mean periodic w with w' + xi w = g + c_tilde on a uniform grid.

    With Xi the zero-mean antiderivative of xi, (w e^Xi)' is
    (g + c_tilde) e^Xi; c_tilde makes that zero-mean so w is periodic,
    and the constant C of integration makes the mean of w vanish.

    Args:
        xi: Samples of a zero-mean periodic function
        g: Samples of the source

    Returns:
        Tuple[np.ndarray, complex, complex]: w, c_tilde and C

    Raises:
        NumericalError: If a quadrature of exp(+-Xi) vanishes
    """
    big_xi = _synthesis(_antiderivative(_analysis(xi)))
    growth = np.exp(big_xi)
    decay = np.exp(-big_xi)

    denominator = np.mean(growth)
    if abs(denominator) < DENOMINATOR_FLOOR:
        raise NumericalError("Quadrature of exp(Xi) vanishes")
    c_tilde = complex(-np.mean(g * growth) / denominator)

    source = _analysis((g + c_tilde) * growth)
    source[0] = 0.0
    J = _synthesis(_antiderivative(source))

    mean_decay = np.mean(decay)
    if abs(mean_decay) < DENOMINATOR_FLOOR:
        raise NumericalError("Quadrature of exp(-Xi) vanishes")
    C = complex(-np.mean(decay * J) / mean_decay)
    return decay * (J + C), c_tilde, C


def invert_explicit(
    phi: FourierState,
    f: FourierState,
    t: float,
    c: float,
    grid: Optional[int] = None,
) -> InversionReport:
    """
    Solve L v = f through the integrating-factor formula.

    After the gauge x_k -> exp(-i k^3 t) x_k the equation becomes
    w' + xi w = g + c_tilde for the zero-mean antiderivative w of the
    unknown, with xi_k = c psi_k / (i k). Periodicity of w e^Xi fixes
    c_tilde, the zero mean of w fixes the integration constant C.

    Args:
        phi: Coefficient state (zero mean)
        f: Right-hand side
        t: Time
        c: Scalar coefficient
        grid: Collocation points, default max(1024, 64 * supports)

    Returns:
        InversionReport: Solution truncated to |k| <= grid/4, residual

    Raises:
        InvalidParameterError: If the grid under-resolves the data
        PeriodicityDefectError: If e^Xi is not periodic
        NumericalError: If a quadrature denominator vanishes
        InversionError: For unexpected failures
    """
    supports = phi.support_bound + f.support_bound
    if grid is None:
        grid = max(1024, 64 * supports)
    if grid <= 4 * supports:
        raise InvalidParameterError(
            f"grid={grid} must exceed 4 * (support of phi + support of f) "
            f"= {4 * supports}"
        )
    try:
        psi = v_to_u(phi, t)
        g_state = v_to_u(f, t)
        k = _wavenumbers(grid)
        psi_hat = _to_grid(psi, grid)
        xi_hat = np.zeros_like(psi_hat)
        nonzero = k != 0
        xi_hat[nonzero] = c * psi_hat[nonzero] / (1j * k[nonzero])

        xi = _synthesis(xi_hat)
        defect = 2.0 * math.pi * abs(np.mean(xi))
        if defect > PERIODICITY_TOLERANCE:
            raise PeriodicityDefectError(defect)

        g = _synthesis(_to_grid(g_state, grid))
        w, c_tilde, C = periodic_solution(xi, g)

        w_hat = _analysis(w)
        cutoff = grid // 4
        modes = {
            int(kk): complex(1j * kk * w_hat[index])
            for index, kk in enumerate(k)
            if kk != 0 and abs(kk) <= cutoff
        }
        solution = u_to_v(FourierState(modes), t)
    except KdVLabError:
        raise
    except Exception as e:
        logger.error(f"Explicit inversion failed: {e}", exc_info=True)
        raise InversionError(str(e)) from e

    if phi.real_valued and f.real_valued:
        solution = solution.symmetrized()
    residual = sobolev_norm(apply_L(phi, solution, t, c) - f, 0.0)
    logger.debug(
        f"Explicit inversion grid={grid}: c_tilde={c_tilde:.3e}, "
        f"residual {residual:.3e}"
    )
    return InversionReport(
        solution=solution,
        method=InversionMethod.EXPLICIT,
        residual=residual,
        c=c,
        t=t,
        grid=grid,
        cutoff=cutoff,
        periodicity_defect=defect,
        c_tilde=c_tilde,
        C_const=C,
    )
