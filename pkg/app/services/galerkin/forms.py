"""Galerkin-truncated integrated forms and their residuals.

With w = Pi_m v the truncated solution satisfies

    d/dt (w - B2m/6)          = -(i/6) R3m
    d/dt (w - B2m/6 + B3m/18) = -(i/6) Rres(w; E) + (i/18) B4m
    d/dt (w - B2m/6 + B30m/18)
        = -(i/6) [Rres(w; E) + R3nres1m] + (i/18) B40m

where R3m keeps triples with 0 < |k2+k3| <= m and Rres(w; E) is its
resonant part written with the conserved energy E = ||w(0)||^2. The
residuals integrate the right-hand sides over the recorded samples and
return the largest L2 defect.
"""

import logging
from typing import Callable, Optional

import numpy as np

from app.exceptions import InvalidParameterError
from app.models.simulation import Trajectory
from app.services.operators import weights
from app.services.operators.kernels import (
    bilinear_sum,
    pair_product,
    trilinear_sum,
)
from app.services.spectrum import dense_sobolev_norm
from app.utils.common import cumulative_integral, reciprocal

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray, float], np.ndarray]


class TruncatedForms:
    """Operators of the truncated forms on dense arrays of half-width m.

    Every method takes low-mode arrays (|k| <= m) and returns arrays of
    the same half-width. A split index ``n`` of None means no splitting.
    """

    def __init__(self, m: int):
        if m < 1:
            raise InvalidParameterError(f"m must be >= 1, got {m}")
        self.m = m
        k = np.arange(-m, m + 1, dtype=np.float64)
        self._inv_k = reciprocal(k)

    def b2(self, a: np.ndarray, b: np.ndarray, t: float) -> np.ndarray:
        """Pi_m B2(a, b)(t)."""
        return bilinear_sum(a, b, t, weights.b2_weight, out_bound=self.m)

    def r3(self, w: np.ndarray, t: float) -> np.ndarray:
        """Pi_m R3 over triples with 0 < |k2+k3| <= m."""
        m = self.m

        def weight(
            k1: np.ndarray, k2: np.ndarray, k3: np.ndarray
        ) -> np.ndarray:
            return weights.r3_weight(k1, k2, k3) * weights.window(k2 + k3, m)

        return trilinear_sum(w, w, w, t, weight, out_bound=m)

    def r3_res(self, w: np.ndarray) -> np.ndarray:
        """Resonant part of r3 (phase-free)."""
        m = self.m

        def weight(
            k1: np.ndarray, k2: np.ndarray, k3: np.ndarray
        ) -> np.ndarray:
            return weights.r3_res_weight(k1, k2, k3) * weights.window(
                k2 + k3, m
            )

        return trilinear_sum(w, w, w, 0.0, weight, out_bound=m)

    def a_res(self, w: np.ndarray, energy: float) -> np.ndarray:
        """(w_k / k)(energy - |w_k|^2) on the dense grid."""
        return self._inv_k * w * (energy - np.abs(w) ** 2)

    def resonant_term(self, w: np.ndarray, energy: float) -> np.ndarray:
        """
        A_res(w; energy) plus the cutoff correction.

        The correction r3_res(w) - A_res(w; ||w||^2) accounts for the
        triples removed by the pair window, among them every triple
        with k2 + k3 = 0. The energy enters only through
        (w_k / k)(energy - ||w||^2).
        """
        current = float(np.sum(np.abs(w) ** 2))
        correction = self.r3_res(w) - self.a_res(w, current)
        return self.a_res(w, energy) + correction

    def r3_nres1(self, w: np.ndarray, t: float, n: int) -> np.ndarray:
        """Nonresonant r3 where argument 2 or 3 is low (|k| <= n)."""
        m = self.m

        def weight(
            k1: np.ndarray, k2: np.ndarray, k3: np.ndarray
        ) -> np.ndarray:
            low = 1.0 - weights.above(k2, n) * weights.above(k3, n)
            return (
                weights.r3_nres_weight(k1, k2, k3)
                * weights.window(k2 + k3, m)
                * low
            )

        return trilinear_sum(w, w, w, t, weight, out_bound=m)

    def b3(
        self, w: np.ndarray, t: float, n: Optional[int] = None
    ) -> np.ndarray:
        """Pi_m B3 over |k2+k3| <= m, arguments 2 and 3 high if n is set."""
        m = self.m

        def weight(
            k1: np.ndarray, k2: np.ndarray, k3: np.ndarray
        ) -> np.ndarray:
            value = weights.b3_weight(k1, k2, k3) * weights.within(k2 + k3, m)
            if n is not None:
                value = value * weights.above(k2, n) * weights.above(k3, n)
            return value

        return trilinear_sum(w, w, w, t, weight, out_bound=m)

    def b4(
        self, w: np.ndarray, t: float, n: Optional[int] = None
    ) -> np.ndarray:
        """
        Pi_m (1/2 B4^1 + B4^2) with the truncation windows.

        B4^1 keeps |k1+k2| <= m, B4^2 keeps |k2+p| <= m, both keep
        0 < |p| <= m. With n set, B4^1 projects arguments 1 and 2 and
        B4^2 projects argument 2 and the pair.
        """
        m = self.m

        def keep_pair(p: np.ndarray) -> np.ndarray:
            mask = weights.window(p, m)
            if n is not None:
                mask = mask * weights.above(p, n)
            return mask

        def first(
            k1: np.ndarray, k2: np.ndarray, p: np.ndarray
        ) -> np.ndarray:
            value = weights.b4_1_weight(k1, k2, p) * weights.within(k1 + k2, m)
            if n is not None:
                value = value * weights.above(k1, n) * weights.above(k2, n)
            return value

        def second(
            k1: np.ndarray, k2: np.ndarray, p: np.ndarray
        ) -> np.ndarray:
            value = weights.b4_2_weight(k1, k2, p) * weights.within(k2 + p, m)
            if n is not None:
                value = value * weights.above(k2, n)
            return value

        if n is None:
            pair = pair_product(w, w, t, keep=keep_pair)
            pair_second = pair
        else:
            pair = pair_product(w, w, t, keep=lambda p: weights.window(p, m))
            pair_second = pair_product(w, w, t, keep=keep_pair)
        return 0.5 * trilinear_sum(
            w, w, pair, t, first, out_bound=m
        ) + trilinear_sum(w, w, pair_second, t, second, out_bound=m)

    # Integrands of the three forms

    def first_integrand(self, w: np.ndarray, t: float) -> np.ndarray:
        return -(1j / 6.0) * self.r3(w, t)

    def second_integrand(
        self, w: np.ndarray, t: float, energy: float
    ) -> np.ndarray:
        return -(1j / 6.0) * self.resonant_term(w, energy) + (
            1j / 18.0
        ) * self.b4(w, t)

    def third_integrand(
        self, w: np.ndarray, t: float, energy: float, n: int
    ) -> np.ndarray:
        nonres = self.resonant_term(w, energy) + self.r3_nres1(w, t, n)
        return -(1j / 6.0) * nonres + (1j / 18.0) * self.b4(w, t, n)


def low_modes(trajectory: Trajectory) -> np.ndarray:
    """Dense samples of Pi_m v, shape (samples, 2m+1)."""
    m, bound = trajectory.m, trajectory.bound
    return trajectory.dense()[:, bound - m : bound + m + 1]


def _max_defect(
    trajectory: Trajectory,
    boundary: Integrand,
    integrand: Integrand,
) -> float:
    times = trajectory.times
    samples = low_modes(trajectory)
    lhs = np.stack([boundary(w, t) for w, t in zip(samples, times)])
    rhs = np.stack([integrand(w, t) for w, t in zip(samples, times)])
    integral = cumulative_integral(times, rhs)
    defect = lhs - lhs[0] - integral
    residuals = dense_sobolev_norm(defect, 0.0)
    return float(np.max(residuals))


def _energy(trajectory: Trajectory, energy: Optional[float]) -> float:
    if energy is not None:
        if energy < 0:
            raise InvalidParameterError(f"energy must be >= 0, got {energy}")
        return energy
    w0 = low_modes(trajectory)[0]
    return float(np.sum(np.abs(w0) ** 2))


def residual_first_form(trajectory: Trajectory) -> float:
    """
    Max L2 defect of w(t) - B2m(t)/6 - [same at 0] + (i/6) int R3m.

    Args:
        trajectory: Output of integrate with at least 3 samples

    Returns:
        float: Max residual over recorded times

    Raises:
        InsufficientSamplesError: With fewer than 3 samples
    """
    forms = TruncatedForms(trajectory.m)

    def boundary(w: np.ndarray, t: float) -> np.ndarray:
        return w - forms.b2(w, w, t) / 6.0

    residual = _max_defect(trajectory, boundary, forms.first_integrand)
    logger.info(f"First-form residual (m={trajectory.m}): {residual:.3e}")
    return residual


def residual_second_form(
    trajectory: Trajectory, energy: Optional[float] = None
) -> float:
    """
    Max L2 defect of the integrated second form.

    Args:
        trajectory: Output of integrate with at least 3 samples
        energy: Energy in the resonant term, defaults to ||Pi_m v(0)||^2

    Returns:
        float: Max residual over recorded times
    """
    forms = TruncatedForms(trajectory.m)
    e = _energy(trajectory, energy)

    def boundary(w: np.ndarray, t: float) -> np.ndarray:
        return w - forms.b2(w, w, t) / 6.0 + forms.b3(w, t) / 18.0

    def integrand(w: np.ndarray, t: float) -> np.ndarray:
        return forms.second_integrand(w, t, e)

    residual = _max_defect(trajectory, boundary, integrand)
    logger.info(f"Second-form residual (m={trajectory.m}): {residual:.3e}")
    return residual


def residual_third_form(
    trajectory: Trajectory, n: int, energy: Optional[float] = None
) -> float:
    """
    Max L2 defect of the integrated third form with split index n.

    Args:
        trajectory: Output of integrate with at least 3 samples
        n: Split index, n >= 0
        energy: Energy in the resonant term, defaults to ||Pi_m v(0)||^2

    Returns:
        float: Max residual over recorded times
    """
    if n < 0:
        raise InvalidParameterError(f"Split index n must be >= 0, got {n}")
    forms = TruncatedForms(trajectory.m)
    e = _energy(trajectory, energy)

    def boundary(w: np.ndarray, t: float) -> np.ndarray:
        return w - forms.b2(w, w, t) / 6.0 + forms.b3(w, t, n) / 18.0

    def integrand(w: np.ndarray, t: float) -> np.ndarray:
        return forms.third_integrand(w, t, e, n)

    residual = _max_defect(trajectory, boundary, integrand)
    logger.info(
        f"Third-form residual (m={trajectory.m}, n={n}): {residual:.3e}"
    )
    return residual
