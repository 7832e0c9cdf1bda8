"""RK4 integration of the Galerkin-truncated interaction-picture KdV."""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from app.exceptions import DivergenceError, KdVLabError, SimulationError
from app.models.simulation import SimConfig, Trajectory
from app.models.state import FourierState
from app.services.operators.phases import bilinear_phase, phase_factor
from app.services.spectrum import high_pass, low_pass

logger = logging.getLogger(__name__)

DIVERGENCE_THRESHOLD = 1e12

# Largest advance, in radians, of the fastest pair phase over one RK4 step
PHASE_RESOLUTION = 0.25


class TruncatedSystem:
    """
    Right-hand side Pi_m b1(Pi_m v, Pi_m v, t) on dense arrays.

    The index grids of all pairs (k1, k2) with 0 < |k1|, |k2|, |k1+k2| <= m
    and their integer phases are built once.
    """

    def __init__(self, m: int):
        if m < 1:
            raise SimulationError(f"m must be >= 1, got {m}")
        self.m = m
        k = np.arange(-m, m + 1, dtype=np.int64)
        K1, K2 = np.meshgrid(k, k, indexing="ij")
        valid = (K1 != 0) & (K2 != 0) & (np.abs(K1 + K2) <= m) & (K1 + K2 != 0)
        self._i1 = (K1[valid] + m).astype(np.intp)
        self._i2 = (K2[valid] + m).astype(np.intp)
        self._out = (K1[valid] + K2[valid] + m).astype(np.intp)
        self._theta = bilinear_phase(K1[valid], K2[valid])
        self._coef = 0.5j * (K1[valid] + K2[valid])
        self._size = 2 * m + 1
        self.max_phase = int(np.max(np.abs(self._theta), initial=0))
        self._step_cache: Optional[Tuple[float, np.ndarray, np.ndarray]] = None
        logger.debug(
            f"Truncated system m={m}: {self._theta.size} pairs, "
            f"fastest phase {self.max_phase}"
        )

    def _field(self, w: np.ndarray, phases: np.ndarray) -> np.ndarray:
        terms = self._coef * phases * w[self._i1] * w[self._i2]
        out = np.bincount(
            self._out, weights=terms.real, minlength=self._size
        ) + 1j * np.bincount(
            self._out, weights=terms.imag, minlength=self._size
        )
        return out.astype(np.complex128)

    def rhs(self, w: np.ndarray, t: float) -> np.ndarray:
        """
        Time derivative of the low modes.

        Args:
            w: Dense low modes, half-width m
            t: Time

        Returns:
            np.ndarray: Dense derivative, zero at k = 0
        """
        return self._field(w, phase_factor(self._theta, t))

    def _increments(self, h: float) -> Tuple[np.ndarray, np.ndarray]:
        if self._step_cache is None or self._step_cache[0] != h:
            self._step_cache = (
                h,
                phase_factor(self._theta, 0.5 * h),
                phase_factor(self._theta, h),
            )
        return self._step_cache[1], self._step_cache[2]

    def step(self, w: np.ndarray, t: float, h: float) -> np.ndarray:
        """
        One classical RK4 step with phases evaluated at stage times.

        The phase at t is computed directly each step; the stage phases at
        t + h/2 and t + h are one rounding away from it.
        """
        half, full = self._increments(h)
        start = phase_factor(self._theta, t)
        middle = start * half
        k1 = self._field(w, start)
        k2 = self._field(w + 0.5 * h * k1, middle)
        k3 = self._field(w + 0.5 * h * k2, middle)
        k4 = self._field(w + h * k3, start * full)
        return w + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    def substeps(self, h: float) -> int:
        """
        RK4 steps needed to cover h at the phase resolution.

        Stage phases are exact, but the stage weights only resolve
        exp(i theta t) when theta * step stays well below one radian.
        """
        return max(1, math.ceil(h * self.max_phase / PHASE_RESOLUTION - 1e-9))


def symmetrize(w: np.ndarray) -> np.ndarray:
    """Dense Hermitian projection (w_k + conj(w_{-k})) / 2."""
    return 0.5 * (w + np.conj(w[::-1]))


def rhs_truncated(v: FourierState, t: float, m: int) -> FourierState:
    """
    Pi_m b1(Pi_m v, Pi_m v, t); zero for |k| > m.

    Args:
        v: State, possibly with modes beyond m
        t: Time
        m: Truncation size

    Returns:
        FourierState: The truncated vector field
    """
    bound = max(m, v.support_bound)
    w = low_pass(v.to_dense(bound), m)
    w = w[bound - m : bound + m + 1]
    return FourierState.from_dense(TruncatedSystem(m).rhs(w, t))


def integrate(
    v0: FourierState,
    cfg: SimConfig,
    system: Optional[TruncatedSystem] = None,
) -> Trajectory:
    """
    Integrate the truncated system from v0 with fixed-step RK4.

    Modes with |k| > m are frozen at their initial values. The step is
    adjusted to h = T / ceil(T / dt) so that the last step lands on T;
    samples are recorded every ``record_stride`` steps and at T. Each step
    is covered by ``cfg.substeps`` RK4 steps, by default as many as keep
    the fastest pair phase resolved.

    Args:
        v0: Hermitian initial state
        cfg: Simulation parameters
        system: Optional prebuilt TruncatedSystem of size cfg.m

    Returns:
        Trajectory: Recorded samples

    Raises:
        NonHermitianStateError: If v0 is not Hermitian
        DivergenceError: If an amplitude exceeds 1e12 or becomes NaN
        SimulationError: For unexpected failures
    """
    v0 = v0.as_real_valued()
    m = cfg.m
    if system is None or system.m != m:
        system = TruncatedSystem(m)
    bound = max(m, v0.support_bound)
    full = v0.to_dense(bound)
    tail = high_pass(full, m)
    w = full[bound - m : bound + m + 1].copy()

    n_steps = math.ceil(cfg.T / cfg.dt - 1e-9) if cfg.T > 0 else 0
    h = cfg.T / n_steps if n_steps else 0.0
    substeps = cfg.substeps or system.substeps(h)
    inner = h / substeps
    logger.info(
        f"Integrating m={m}, T={cfg.T}, {n_steps} steps of h={h:.3e} "
        f"with {substeps} RK4 substeps"
    )

    def record(low: np.ndarray) -> FourierState:
        dense = tail.copy()
        dense[bound - m : bound + m + 1] += low
        return FourierState.from_dense(dense, real_valued=True)

    times: List[float] = [0.0]
    states: List[FourierState] = [record(w)]
    try:
        for step in range(1, n_steps + 1):
            t = (step - 1) * h
            for j in range(substeps):
                w = system.step(w, t + j * inner, inner)
            w = symmetrize(w)
            amplitude = float(np.max(np.abs(w)))
            blown_up = amplitude > DIVERGENCE_THRESHOLD
            if not math.isfinite(amplitude) or blown_up:
                raise DivergenceError(step, step * h, amplitude)
            if step % cfg.record_stride == 0 or step == n_steps:
                times.append(step * h)
                states.append(record(w))
    except KdVLabError:
        raise
    except Exception as e:
        logger.error(f"Integration failed: {e}", exc_info=True)
        raise SimulationError(str(e)) from e

    trajectory = Trajectory(
        config=cfg, times=np.array(times), states=states
    )
    logger.info(
        f"Recorded {len(trajectory)} samples, energy drift "
        f"{trajectory.energy_drift():.3e}"
    )
    return trajectory


def galerkin_refinement(
    v0: FourierState, cfg: SimConfig, m_values: List[int]
) -> List[float]:
    """
    ||v^(m)(T) - v^(2m)(T)||_0 for each m in m_values.

    Args:
        v0: Initial state
        cfg: Template configuration (m is overridden)
        m_values: Truncation sizes

    Returns:
        List[float]: Differences at time T
    """
    differences = []
    for m in m_values:
        coarse = integrate(v0, cfg.model_copy(update={"m": m})).final
        fine = integrate(v0, cfg.model_copy(update={"m": 2 * m})).final
        diff = fine - coarse
        differences.append(
            math.sqrt(sum(abs(z) ** 2 for _, z in diff.items()))
        )
        logger.info(f"Galerkin refinement m={m}: {differences[-1]:.3e}")
    return differences
