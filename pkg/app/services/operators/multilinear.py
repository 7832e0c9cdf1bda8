"""Free multilinear operators of the interaction-picture KdV equation.

Every operator is an exact finite sum over the supports of its
arguments; the output support bound is the sum of the input support
bounds and no truncation is applied.
"""

import logging

import numpy as np

from app.models.state import FourierState
from app.services.operators import weights
from app.services.operators.kernels import (
    bilinear_sum,
    pair_product,
    trilinear_sum,
)

logger = logging.getLogger(__name__)


def _dense(state: FourierState) -> np.ndarray:
    return state.to_dense()


def _state(array: np.ndarray) -> FourierState:
    return FourierState.from_dense(array)


def b1(u: FourierState, v: FourierState, t: float) -> FourierState:
    """(ik/2) sum_{k1+k2=k} exp(3 i k k1 k2 t) u_{k1} v_{k2}."""
    return _state(bilinear_sum(_dense(u), _dense(v), t, weights.b1_weight))


def b2(u: FourierState, v: FourierState, t: float) -> FourierState:
    """sum_{k1+k2=k} exp(3 i k k1 k2 t) u_{k1} v_{k2} / (k1 k2)."""
    return _state(bilinear_sum(_dense(u), _dense(v), t, weights.b2_weight))


def r3(
    u: FourierState, v: FourierState, w: FourierState, t: float
) -> FourierState:
    """sum_{k1+k2+k3=k} exp(i cubic t) u_{k1} v_{k2} w_{k3} / k1."""
    return _state(
        trilinear_sum(_dense(u), _dense(v), _dense(w), t, weights.r3_weight)
    )


def r3_paired(
    u: FourierState, v: FourierState, w: FourierState, t: float
) -> FourierState:
    """
    R3 restricted to k2 + k3 != 0.

    This is the trilinear term produced by integrating the B2 form by
    parts; triples with k2 + k3 = 0 correspond to the mean of v w and
    do not occur.
    """

    def weight(
        k1: np.ndarray, k2: np.ndarray, k3: np.ndarray
    ) -> np.ndarray:
        return weights.r3_weight(k1, k2, k3) * ((k2 + k3) != 0)

    return _state(trilinear_sum(_dense(u), _dense(v), _dense(w), t, weight))


def b3(
    u: FourierState, v: FourierState, w: FourierState, t: float
) -> FourierState:
    """Nonresonant sum with denominator k1 (k1+k2)(k2+k3)(k3+k1)."""
    return _state(
        trilinear_sum(_dense(u), _dense(v), _dense(w), t, weights.b3_weight)
    )


def b4_1(
    u: FourierState,
    v: FourierState,
    w: FourierState,
    phi: FourierState,
    t: float,
) -> FourierState:
    """
    First quadrilinear sum of B4.

    sum exp(i Phi t) u_{k1} v_{k2} w_{k3} phi_{k4} / ((k1+k2)(k1+p)(k2+p))
    over nonresonant indices, p = k3 + k4 != 0.
    """
    pair = pair_product(_dense(w), _dense(phi), t)
    return _state(
        trilinear_sum(_dense(u), _dense(v), pair, t, weights.b4_1_weight)
    )


def b4_2(
    u: FourierState,
    v: FourierState,
    w: FourierState,
    phi: FourierState,
    t: float,
) -> FourierState:
    """
    Second quadrilinear sum of B4.

    sum exp(i Phi t) p u_{k1} v_{k2} w_{k3} phi_{k4}
    / (k1 (k1+k2)(k1+p)(k2+p)) over nonresonant indices, p = k3 + k4.
    """
    pair = pair_product(_dense(w), _dense(phi), t)
    return _state(
        trilinear_sum(_dense(u), _dense(v), pair, t, weights.b4_2_weight)
    )


def b4(
    u: FourierState,
    v: FourierState,
    w: FourierState,
    phi: FourierState,
    t: float,
) -> FourierState:
    """B4 = 1/2 B4^1 + B4^2."""
    pair = pair_product(_dense(w), _dense(phi), t)
    a, b = _dense(u), _dense(v)
    first = trilinear_sum(a, b, pair, t, weights.b4_1_weight)
    second = trilinear_sum(a, b, pair, t, weights.b4_2_weight)
    return _state(0.5 * first + second)


def product(u: FourierState, v: FourierState) -> FourierState:
    """Fourier coefficients of the pointwise product u v, mean dropped."""
    return _state(pair_product(_dense(u), _dense(v), 0.0))


def product_mean(u: FourierState, v: FourierState) -> complex:
    """Mean (k = 0 coefficient) of the pointwise product u v."""
    return complex(sum(z * v[-k] for k, z in u.items()))
