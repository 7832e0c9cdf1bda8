"""Picard iteration for the integrated forms of the truncated system.

For y = w - w0 the first form reads

    y - 1/3 B2m(w0, y)(t) = 1/6 B2m(y, y)(t)
        + 1/6 [B2m(w0, w0)(t) - B2m(w0, w0)(0)] - i/6 int_0^t R3m(w0 + y)

and the third form adds -1/18 [B30m(w)(t) - B30m(w0)(0)] on the right
while replacing the integrand. The left-hand operator is inverted at
every time sample by an LU factorisation of its truncated matrix.
"""

import logging
import math
from typing import List, Literal

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from app.exceptions import InvalidParameterError, NonContractionError
from app.models.simulation import ContractionResult, SimConfig, Trajectory
from app.models.state import FourierState
from app.services.galerkin.forms import TruncatedForms
from app.services.galerkin.system import symmetrize
from app.services.inverse_operator import assemble_matrix
from app.services.spectrum import dense_sobolev_norm, high_pass, project
from app.utils.common import cumulative_integral

logger = logging.getLogger(__name__)

LINEAR_COEFFICIENT = 1.0 / 3.0


def _mode(s: float) -> Literal["first", "third"]:
    if s > 0.5:
        return "first"
    if s >= 0.0:
        return "third"
    raise InvalidParameterError(
        f"contraction_solve needs s >= 0, got s={s}"
    )


def contraction_solve(
    v0: FourierState,
    s: float,
    T_star: float,
    m: int,
    dt: float = 1e-4,
    n: int = 0,
    tol: float = 1e-10,
    max_iterations: int = 100,
) -> ContractionResult:
    """
    Solve the truncated problem on [0, T*] by fixed-point iteration.

    s > 1/2 uses the first form; s in [0, 1/2] uses the third form with
    split index n. Iteration stops once the sup over samples of the
    H^s difference of successive iterates is below tol.

    Args:
        v0: Hermitian initial state (modes beyond m stay frozen)
        s: Sobolev index of the iteration norm
        T_star: Horizon
        m: Truncation size
        dt: Sample spacing of the time grid
        n: Split index of the third form
        tol: Stopping tolerance
        max_iterations: Iteration cap

    Returns:
        ContractionResult: Solution trajectory v = v0 + y and the
        contraction history

    Raises:
        NonContractionError: If the iteration does not converge
    """
    mode = _mode(s)
    if T_star <= 0:
        raise InvalidParameterError(f"T* must be > 0, got {T_star}")
    if n < 0:
        raise InvalidParameterError(f"n must be >= 0, got {n}")
    v0 = v0.as_real_valued()
    bound = max(m, v0.support_bound)
    tail = high_pass(v0.to_dense(bound), m)
    w0_state = project(v0, m, "low")
    w0 = w0_state.to_dense(m)

    steps = math.ceil(T_star / dt - 1e-9)
    times = np.linspace(0.0, T_star, steps + 1)
    forms = TruncatedForms(m)
    energy = float(np.sum(np.abs(w0) ** 2))
    center = m
    logger.info(
        f"Contraction solve ({mode} form) m={m}, T*={T_star}, "
        f"{len(times)} samples"
    )

    factors = [
        lu_factor(assemble_matrix(w0_state, float(t), LINEAR_COEFFICIENT, m))
        for t in times
    ]
    forcing = np.stack(
        [forms.b2(w0, w0, float(t)) for t in times]
    )
    forcing = (forcing - forms.b2(w0, w0, 0.0)) / 6.0
    b30_initial = forms.b3(w0, 0.0, n) if mode == "third" else None

    def integrand(w: np.ndarray, t: float) -> np.ndarray:
        if mode == "first":
            return forms.first_integrand(w, t)
        return forms.third_integrand(w, t, energy, n)

    y = np.zeros((len(times), 2 * m + 1), dtype=np.complex128)
    differences: List[float] = []
    ratios: List[float] = []
    converged = False
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        w = w0[None, :] + y
        values = np.stack(
            [integrand(w[j], float(t)) for j, t in enumerate(times)]
        )
        rhs = forcing + cumulative_integral(times, values)
        updated = np.empty_like(y)
        for j, t in enumerate(times):
            right = rhs[j] + forms.b2(y[j], y[j], float(t)) / 6.0
            if mode == "third":
                b30 = forms.b3(w[j], float(t), n)
                right = right - (b30 - b30_initial) / 18.0
            reduced = np.delete(right, center)
            solved = lu_solve(factors[j], reduced)
            updated[j] = symmetrize(np.insert(solved, center, 0.0))
        difference = float(np.max(dense_sobolev_norm(updated - y, s)))
        if not math.isfinite(difference):
            raise NonContractionError(iterations, difference)
        if differences and differences[-1] > 0:
            ratio = difference / differences[-1]
            ratios.append(ratio)
            if ratio >= 1.0:
                logger.warning(
                    f"Iteration {iterations} did not contract "
                    f"(ratio {ratio:.3f}); T* may be too large"
                )
        differences.append(difference)
        y = updated
        logger.debug(f"Iteration {iterations}: difference {difference:.3e}")
        if difference < tol:
            converged = True
            break

    if not converged:
        raise NonContractionError(iterations, differences[-1])

    states = []
    for j in range(len(times)):
        dense = tail.copy()
        dense[bound - m : bound + m + 1] += w0 + y[j]
        states.append(FourierState.from_dense(dense, real_valued=True))
    trajectory = Trajectory(
        config=SimConfig(m=m, dt=dt, T=T_star, n=n),
        times=times,
        states=states,
    )
    logger.info(
        f"Contraction converged in {iterations} iterations "
        f"(max ratio {max(ratios, default=0.0):.3f})"
    )
    return ContractionResult(
        trajectory=trajectory,
        iterations=iterations,
        ratios=ratios,
        differences=differences,
        converged=converged,
        mode=mode,
    )
