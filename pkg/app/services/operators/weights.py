"""Summand weights and index masks of the multilinear operators.

Resonance is decided by exact integer arithmetic: a weight built with
``reciprocal`` of a product containing (k1+k2)(k2+k3)(k3+k1) vanishes
on resonant triples.
"""

import numpy as np

from app.utils.common import reciprocal


def resonance_product(
    k1: np.ndarray, k2: np.ndarray, k3: np.ndarray
) -> np.ndarray:
    """(k1+k2)(k2+k3)(k3+k1) as int64."""
    return (k1 + k2) * (k2 + k3) * (k3 + k1)


def is_resonant(k1: np.ndarray, k2: np.ndarray, k3: np.ndarray) -> np.ndarray:
    return resonance_product(k1, k2, k3) == 0


def above(k: np.ndarray, n: int) -> np.ndarray:
    """Indicator of |k| > n (the high-mode projection)."""
    return (np.abs(k) > n).astype(np.float64)


def window(p: np.ndarray, m: int) -> np.ndarray:
    """Indicator of 0 < |p| <= m."""
    return ((p != 0) & (np.abs(p) <= m)).astype(np.float64)


def within(p: np.ndarray, m: int) -> np.ndarray:
    """Indicator of |p| <= m."""
    return (np.abs(p) <= m).astype(np.float64)


def b1_weight(k1: np.ndarray, k2: np.ndarray) -> np.ndarray:
    return 0.5j * (k1 + k2)


def b2_weight(k1: np.ndarray, k2: np.ndarray) -> np.ndarray:
    return reciprocal(k1 * k2)


def r3_weight(k1: np.ndarray, k2: np.ndarray, k3: np.ndarray) -> np.ndarray:
    shape = np.broadcast_shapes(k1.shape, k2.shape, k3.shape)
    return np.broadcast_to(reciprocal(k1), shape)


def r3_res_weight(
    k1: np.ndarray, k2: np.ndarray, k3: np.ndarray
) -> np.ndarray:
    return reciprocal(k1) * is_resonant(k1, k2, k3)


def r3_nres_weight(
    k1: np.ndarray, k2: np.ndarray, k3: np.ndarray
) -> np.ndarray:
    return reciprocal(k1) * ~is_resonant(k1, k2, k3)


def b3_weight(k1: np.ndarray, k2: np.ndarray, k3: np.ndarray) -> np.ndarray:
    """1 / (k1 (k1+k2)(k2+k3)(k3+k1)), zero on resonant triples."""
    return reciprocal(k1 * resonance_product(k1, k2, k3))


def b4_1_weight(k1: np.ndarray, k2: np.ndarray, p: np.ndarray) -> np.ndarray:
    """1 / ((k1+k2)(k1+p)(k2+p)) with p = k3 + k4."""
    return reciprocal(resonance_product(k1, k2, p))


def b4_2_weight(k1: np.ndarray, k2: np.ndarray, p: np.ndarray) -> np.ndarray:
    """p / (k1 (k1+k2)(k1+p)(k2+p)) with p = k3 + k4."""
    return p * reciprocal(k1 * resonance_product(k1, k2, p))
