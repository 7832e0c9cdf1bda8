"""Low/high splitting of the nonresonant cubic and quartic terms.

Pi_{-n} keeps |k| > n. The nonresonant part of R3 splits into
r3_nres0_n, where arguments 2 and 3 are both high, and the remainder
r3_nres1_n. Integrating r3_nres0_n by parts gives b30_n and b40_n.
"""

import numpy as np

from app.exceptions import InvalidParameterError
from app.models.state import FourierState
from app.services.operators import weights
from app.services.operators.kernels import pair_product, trilinear_sum


def _check(n: int) -> None:
    if n < 0:
        raise InvalidParameterError(f"Split index n must be >= 0, got {n}")


def _both_high(k2: np.ndarray, k3: np.ndarray, n: int) -> np.ndarray:
    return weights.above(k2, n) * weights.above(k3, n)


def r3_nres0_n(
    u: FourierState, v: FourierState, w: FourierState, t: float, n: int
) -> FourierState:
    """Nonresonant R3 with Pi_{-n} applied to arguments 2 and 3."""
    _check(n)

    def weight(
        k1: np.ndarray, k2: np.ndarray, k3: np.ndarray
    ) -> np.ndarray:
        return weights.r3_nres_weight(k1, k2, k3) * _both_high(k2, k3, n)

    return FourierState.from_dense(
        trilinear_sum(u.to_dense(), v.to_dense(), w.to_dense(), t, weight)
    )


def r3_nres1_n(
    u: FourierState, v: FourierState, w: FourierState, t: float, n: int
) -> FourierState:
    """Nonresonant R3 over triples where argument 2 or 3 is low."""
    _check(n)

    def weight(
        k1: np.ndarray, k2: np.ndarray, k3: np.ndarray
    ) -> np.ndarray:
        return weights.r3_nres_weight(k1, k2, k3) * (
            1.0 - _both_high(k2, k3, n)
        )

    return FourierState.from_dense(
        trilinear_sum(u.to_dense(), v.to_dense(), w.to_dense(), t, weight)
    )


def b30_n(
    u: FourierState, v: FourierState, w: FourierState, t: float, n: int
) -> FourierState:
    """b3 with Pi_{-n} applied to arguments 2 and 3."""
    _check(n)

    def weight(
        k1: np.ndarray, k2: np.ndarray, k3: np.ndarray
    ) -> np.ndarray:
        return weights.b3_weight(k1, k2, k3) * _both_high(k2, k3, n)

    return FourierState.from_dense(
        trilinear_sum(u.to_dense(), v.to_dense(), w.to_dense(), t, weight)
    )


def b40_1_n(
    u: FourierState,
    v: FourierState,
    w: FourierState,
    phi: FourierState,
    t: float,
    n: int,
) -> FourierState:
    """First quadrilinear sum with Pi_{-n} on arguments 1 and 2."""
    _check(n)

    def weight(
        k1: np.ndarray, k2: np.ndarray, p: np.ndarray
    ) -> np.ndarray:
        return weights.b4_1_weight(k1, k2, p) * (
            weights.above(k1, n) * weights.above(k2, n)
        )

    pair = pair_product(w.to_dense(), phi.to_dense(), t)
    return FourierState.from_dense(
        trilinear_sum(u.to_dense(), v.to_dense(), pair, t, weight)
    )


def b40_2_n(
    u: FourierState,
    v: FourierState,
    w: FourierState,
    phi: FourierState,
    t: float,
    n: int,
) -> FourierState:
    """Second quadrilinear sum with Pi_{-n} on argument 2 and on the pair.

    The pair projection keeps products w_{k3} phi_{k4} with |k3+k4| > n.
    """
    _check(n)

    def weight(
        k1: np.ndarray, k2: np.ndarray, p: np.ndarray
    ) -> np.ndarray:
        return weights.b4_2_weight(k1, k2, p) * weights.above(k2, n)

    pair = pair_product(
        w.to_dense(), phi.to_dense(), t, keep=lambda p: weights.above(p, n)
    )
    return FourierState.from_dense(
        trilinear_sum(u.to_dense(), v.to_dense(), pair, t, weight)
    )


def b40_n(
    u: FourierState,
    v: FourierState,
    w: FourierState,
    phi: FourierState,
    t: float,
    n: int,
) -> FourierState:
    """b40_n = 1/2 b40_1_n + b40_2_n."""
    return 0.5 * b40_1_n(u, v, w, phi, t, n) + b40_2_n(u, v, w, phi, t, n)
