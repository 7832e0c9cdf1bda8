"""Integer phase functions and accurate evaluation of exp(i Theta t)."""

import logging
from typing import Dict

import numpy as np

logger = logging.getLogger(__name__)

# 2*pi in extended precision
TWO_PI = np.longdouble(8) * np.arctan(np.longdouble(1))


def cubic_phase(k1: np.ndarray, k2: np.ndarray, k3: np.ndarray) -> np.ndarray:
    """3 (k1+k2)(k2+k3)(k3+k1), equal to (k1+k2+k3)^3 - k1^3 - k2^3 - k3^3."""
    a = np.asarray(k1, dtype=np.int64)
    b = np.asarray(k2, dtype=np.int64)
    c = np.asarray(k3, dtype=np.int64)
    return 3 * (a + b) * (b + c) * (c + a)


def bilinear_phase(k1: np.ndarray, k2: np.ndarray) -> np.ndarray:
    """3 (k1+k2) k1 k2, equal to (k1+k2)^3 - k1^3 - k2^3."""
    a = np.asarray(k1, dtype=np.int64)
    b = np.asarray(k2, dtype=np.int64)
    return 3 * (a + b) * a * b


def quartic_phase(
    k1: np.ndarray, k2: np.ndarray, k3: np.ndarray, k4: np.ndarray
) -> np.ndarray:
    """(k1+k2+k3+k4)^3 - sum k_i^3."""
    ks = [np.asarray(k, dtype=np.int64) for k in (k1, k2, k3, k4)]
    total = ks[0] + ks[1] + ks[2] + ks[3]
    return total**3 - sum(k**3 for k in ks)


def phase_factor(theta: np.ndarray, t: float) -> np.ndarray:
    """
    exp(i theta t) for integer phases.

    The product theta*t is formed and reduced modulo 2*pi in extended
    precision before exponentiating, so large phases at moderate times
    keep full double accuracy.

    Args:
        theta: Integer phases
        t: Time

    Returns:
        np.ndarray: Complex unit factors with the shape of theta
    """
    theta_arr = np.asarray(theta, dtype=np.int64)
    if t == 0:
        return np.ones(theta_arr.shape, dtype=np.complex128)
    arg = np.mod(theta_arr.astype(np.longdouble) * np.longdouble(t), TWO_PI)
    return np.exp(1j * arg.astype(np.float64))


class PhaseCache:
    """Memoised exp(i theta t) at one fixed time."""

    def __init__(self, t: float):
        self.t = t
        self._cache: Dict[int, complex] = {}

    def factor(self, theta: int) -> complex:
        value = self._cache.get(theta)
        if value is None:
            value = complex(phase_factor(np.array([theta]), self.t)[0])
            self._cache[theta] = value
        return value

    def __call__(self, theta: np.ndarray) -> np.ndarray:
        """Vectorised lookup; only unseen phases are evaluated."""
        theta_arr = np.asarray(theta, dtype=np.int64)
        unique, inverse = np.unique(theta_arr, return_inverse=True)
        missing = [int(u) for u in unique if int(u) not in self._cache]
        if missing:
            values = phase_factor(np.array(missing, dtype=np.int64), self.t)
            self._cache.update(zip(missing, values.tolist()))
        table = np.array(
            [self._cache[int(u)] for u in unique], dtype=np.complex128
        )
        return table[inverse].reshape(theta_arr.shape)

    def __len__(self) -> int:
        return len(self._cache)
