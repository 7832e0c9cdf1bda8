"""Rotating complex Burgers flow u_t + u u_z = i Omega u.

With v = exp(-i Omega t) u the solution is given implicitly by
v = phi(z - lambda(t) v), lambda(t) = (exp(i Omega t) - 1) / (i Omega),
and d_z v = phi'(zeta) / (1 + lambda phi'(zeta)) at the characteristic
foot zeta = z - lambda v. Blow-up is the vanishing of 1 + lambda phi'.
"""

import cmath
import logging
import math
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from app.exceptions import BurgersError, InvalidParameterError, KdVLabError
from app.models.burgers import (
    AnalyticProfile,
    BlowupResult,
    CharacteristicSolution,
)

logger = logging.getLogger(__name__)

SERIES_CUTOFF = 1e-6
SINGULAR_DENOMINATOR = 1e-8
CONTRACTION_FACTOR = 0.9
STALL_LIMIT = 3
BISECTION_TOLERANCE = 1e-6


def lam(t: float, omega: float) -> complex:
    """(exp(i Omega t) - 1) / (i Omega), equal to t when Omega = 0."""
    x = omega * t
    if abs(x) < SERIES_CUTOFF:
        return complex(t * (1.0 + 0.5j * x - x * x / 6.0))
    return (cmath.exp(1j * x) - 1.0) / (1j * omega)


def _check_strip(phi: AnalyticProfile, z: np.ndarray, label: str) -> bool:
    inside = bool(np.all(np.abs(z.imag) <= phi.strip))
    if not inside:
        logger.warning(
            f"{label} leaves the strip |Im z| <= {phi.strip} of {phi.name}"
        )
    return inside


def solve_implicit(
    phi: AnalyticProfile,
    z: Any,
    t: float,
    omega: float,
    tol: float = 1e-12,
    max_iter: int = 200,
    initial: Optional[np.ndarray] = None,
) -> CharacteristicSolution:
    """
    Solve v = phi(z - lambda(t) v) at every sample point.

    Starts with fixed-point iteration from v = phi(z) (or ``initial``)
    and switches to damped Newton on F(v) = v - phi(z - lambda v) once
    three consecutive steps fail to contract by 0.9.

    Args:
        phi: Initial profile
        z: Scalar or array of sample points with |Im z| < strip
        t: Time
        omega: Rotation rate
        tol: Residual tolerance |v - phi(z - lambda v)|
        max_iter: Iteration cap
        initial: Starting guess, used for continuation in time

    Returns:
        CharacteristicSolution: v, d_z v and the denominator 1 + lambda
        phi'; ``converged`` is False when the cap is hit or the
        denominator is below 1e-8

    Raises:
        InvalidParameterError: If a sample point lies outside the strip
        BurgersError: For unexpected failures
    """
    points = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    if np.any(np.abs(points.imag) >= phi.strip):
        raise InvalidParameterError(
            f"Sample points must satisfy |Im z| < {phi.strip}"
        )
    lam_t = lam(t, omega)
    try:
        if initial is None:
            v = phi(points)
        else:
            v = np.array(initial, dtype=np.complex128)
        method = "fixed-point"
        stalled = 0
        previous_step = math.inf
        converged = False
        iterations = 0
        for iterations in range(1, max_iter + 1):
            zeta = points - lam_t * v
            residual = v - phi(zeta)
            size = float(np.max(np.abs(residual)))
            if size < tol:
                converged = True
                break
            if method == "fixed-point":
                v = v - residual
                if size >= CONTRACTION_FACTOR * previous_step:
                    stalled += 1
                else:
                    stalled = 0
                previous_step = size
                if stalled >= STALL_LIMIT:
                    logger.debug(
                        f"Fixed point stalled at t={t}; switching to Newton"
                    )
                    method = "newton"
                continue
            slope = 1.0 + lam_t * phi.dphi(zeta)
            if np.min(np.abs(slope)) < SINGULAR_DENOMINATOR:
                break
            update = residual / slope
            damping = 1.0
            while damping > 1e-4:
                trial = v - damping * update
                trial_residual = trial - phi(points - lam_t * trial)
                if float(np.max(np.abs(trial_residual))) < size:
                    break
                damping *= 0.5
            v = v - damping * update

        zeta = points - lam_t * v
        _check_strip(phi, zeta, "Characteristic foot")
        dphi = phi.dphi(zeta)
        denominator = 1.0 + lam_t * dphi
        small = np.abs(denominator) < SINGULAR_DENOMINATOR
        near_singular = bool(np.any(small))
        safe = np.where(small, 1.0, denominator)
        dz_v = np.where(small, np.inf, dphi / safe)
    except KdVLabError:
        raise
    except Exception as e:
        logger.error(f"Implicit solve failed: {e}", exc_info=True)
        raise BurgersError(str(e)) from e

    if not converged:
        logger.debug(
            f"Implicit solve at t={t}, omega={omega} did not converge "
            f"after {iterations} iterations"
        )
    return CharacteristicSolution(
        z=points,
        t=t,
        omega=omega,
        lam=lam_t,
        v=v,
        dz_v=dz_v,
        denominator=denominator,
        iterations=iterations,
        converged=converged and not near_singular,
        near_singular=near_singular,
        method=method,
    )


def _min_denominator(
    phi: AnalyticProfile,
    z: np.ndarray,
    t: float,
    omega: float,
    guess: np.ndarray,
) -> Tuple[float, CharacteristicSolution]:
    solution = solve_implicit(phi, z, t, omega, initial=guess)
    return solution.min_denominator, solution


def blowup_scan(
    phi: AnalyticProfile,
    omega: float,
    z_samples: Sequence[complex],
    T: float,
    step: Optional[float] = None,
    threshold: float = 1e-3,
) -> BlowupResult:
    """
    March in time until min_z |1 + lambda phi'| drops below threshold.

    The crossing is bisected to 1e-6 and the denominator is then
    extrapolated linearly to zero for the blow-up time estimate.

    Args:
        phi: Initial profile
        omega: Rotation rate
        z_samples: Sample points inside the strip
        T: Final time
        step: Time step, default min(T/2000, 0.01)
        threshold: Denominator level treated as blow-up

    Returns:
        BlowupResult: Blow-up time and witness, or blew_up=False with
        the smallest denominator seen on [0, T]
    """
    if T <= 0:
        raise InvalidParameterError(f"T must be > 0, got {T}")
    if threshold <= 0:
        raise InvalidParameterError(
            f"threshold must be > 0, got {threshold}"
        )
    z = np.asarray(list(z_samples), dtype=np.complex128)
    if z.size == 0:
        raise InvalidParameterError("blowup_scan needs at least one sample")
    h = step if step is not None else min(T / 2000.0, 0.01)
    steps = math.ceil(T / h - 1e-9)
    h = T / steps
    logger.info(
        f"Blow-up scan of {phi.name} with omega={omega} up to T={T} "
        f"({steps} steps, {z.size} samples)"
    )

    guess = phi(z)
    times = [0.0]
    minima = [1.0]
    notes: List[str] = []
    for j in range(1, steps + 1):
        t = j * h
        value, solution = _min_denominator(phi, z, t, omega, guess)
        times.append(t)
        minima.append(value)
        if value >= threshold and solution.converged:
            guess = solution.v
            continue

        lo, hi = t - h, t
        lo_guess = guess
        while hi - lo > BISECTION_TOLERANCE:
            mid = 0.5 * (lo + hi)
            mid_value, mid_solution = _min_denominator(
                phi, z, mid, omega, lo_guess
            )
            if mid_value >= threshold and mid_solution.converged:
                lo, lo_guess = mid, mid_solution.v
            else:
                hi = mid
        level, at_lo = _min_denominator(phi, z, lo, omega, lo_guess)
        delta = BISECTION_TOLERANCE
        before, _ = _min_denominator(
            phi, z, max(lo - delta, 0.0), omega, lo_guess
        )
        slope = (before - level) / delta
        if slope > 0:
            t_star = lo + level / slope
        else:
            t_star = hi
            notes.append("denominator not decreasing at the crossing")
        index = int(np.argmin(np.abs(at_lo.denominator)))
        witness = complex(z[index])
        logger.info(
            f"Blow-up detected: t*={t_star:.6f} at z={witness:.4f} "
            f"(threshold crossed at t={lo:.6f})"
        )
        return BlowupResult(
            blew_up=True,
            t_star=t_star,
            z_witness=witness,
            t_threshold=lo,
            min_denominator=level,
            times=np.array(times),
            min_denominators=np.array(minima),
            notes=notes,
        )

    smallest = float(np.min(minima))
    logger.info(f"No blow-up up to T={T}; min denominator {smallest:.4f}")
    return BlowupResult(
        blew_up=False,
        t_star=None,
        z_witness=None,
        t_threshold=None,
        min_denominator=smallest,
        times=np.array(times),
        min_denominators=np.array(minima),
        notes=notes,
    )


def omega_sweep(
    phi: AnalyticProfile,
    omegas: Sequence[float],
    z_samples: Sequence[complex],
    T: float,
    step: Optional[float] = None,
) -> List[BlowupResult]:
    """
    Run blowup_scan for every rotation rate in ascending |Omega|.

    Violations of the expected monotone growth of the smallest
    denominator with |Omega| are logged and attached as notes.
    """
    ordered = sorted(omegas, key=abs)
    results = [blowup_scan(phi, w, z_samples, T, step) for w in ordered]
    for (w_prev, prev), (w, result) in zip(
        zip(ordered, results), zip(ordered[1:], results[1:])
    ):
        if result.min_denominator < prev.min_denominator - 1e-9:
            note = (
                f"min denominator decreased from {prev.min_denominator:.4f} "
                f"at omega={w_prev} to {result.min_denominator:.4f} "
                f"at omega={w}"
            )
            logger.warning(note)
            result.notes.append(note)
    return results


def rotation_threshold(phi: AnalyticProfile) -> float:
    """Rotation rate 2 sup|phi'| beyond which no blow-up can occur."""
    return 2.0 * phi.sup_dphi


def equation_residual(
    phi: AnalyticProfile,
    z: Any,
    t: float,
    omega: float,
    h: float = 1e-4,
) -> float:
    """
    Max |u_t + u u_z - i Omega u| for u = exp(i Omega t) v.

    u_t uses a central difference in time; u_z uses the closed form
    of d_z v.
    """
    if t - h < 0:
        raise InvalidParameterError(f"t={t} must be >= h={h}")
    centre = solve_implicit(phi, z, t, omega)
    ahead = solve_implicit(phi, z, t + h, omega, initial=centre.v)
    behind = solve_implicit(phi, z, t - h, omega, initial=centre.v)

    def rotate(solution: CharacteristicSolution) -> np.ndarray:
        return cmath.exp(1j * omega * solution.t) * solution.v

    u = rotate(centre)
    u_t = (rotate(ahead) - rotate(behind)) / (2.0 * h)
    u_z = cmath.exp(1j * omega * t) * centre.dz_v
    return float(np.max(np.abs(u_t + u * u_z - 1j * omega * u)))
