"""Dense convolution kernels with oscillating phases.

Arrays are indexed by k + bound, the entry at k = 0 is ignored on input
and zero on output. Weight callables receive broadcastable int64
wavenumber arrays and return the summand weight; a weight of zero
removes the term (resonant or excluded indices).
"""

import logging
from typing import Callable, Optional

import numpy as np

from app.services.operators.phases import (
    bilinear_phase,
    cubic_phase,
    phase_factor,
)

logger = logging.getLogger(__name__)

BilinearWeight = Callable[[np.ndarray, np.ndarray], np.ndarray]
TrilinearWeight = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]
PairMask = Callable[[np.ndarray], np.ndarray]

# Max number of summands materialised at once by trilinear_sum
BLOCK_SIZE = 1 << 21


def _unit_weight(k1: np.ndarray, k2: np.ndarray) -> np.ndarray:
    return np.ones(np.broadcast_shapes(k1.shape, k2.shape))


def _nonzero_modes(array: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Wavenumbers and values of the nonzero entries (k = 0 skipped)."""
    bound = array.shape[0] // 2
    index = np.flatnonzero(array)
    index = index[index != bound]
    return index.astype(np.int64) - bound, array[index]


def _scatter(
    k: np.ndarray, terms: np.ndarray, out_bound: int
) -> np.ndarray:
    """Accumulate terms into a dense output at wavenumbers k."""
    size = 2 * out_bound + 1
    keep = (np.abs(k) <= out_bound) & (k != 0)
    index = (k[keep] + out_bound).ravel()
    values = terms[keep].ravel()
    out = np.bincount(index, weights=values.real, minlength=size) + 1j * (
        np.bincount(index, weights=values.imag, minlength=size)
    )
    return out.astype(np.complex128)


def bilinear_sum(
    a: np.ndarray,
    b: np.ndarray,
    t: float,
    weight: BilinearWeight,
    out_bound: Optional[int] = None,
) -> np.ndarray:
    """
    sum_{k1+k2=k} exp(3 i k k1 k2 t) weight(k1,k2) a_{k1} b_{k2}.

    Args:
        a: Dense first argument
        b: Dense second argument
        t: Time in the phase
        weight: Summand weight
        out_bound: Output half-width, defaults to the sum of input bounds

    Returns:
        np.ndarray: Dense output of half-width out_bound
    """
    if out_bound is None:
        out_bound = a.shape[0] // 2 + b.shape[0] // 2
    k1, a_vals = _nonzero_modes(a)
    k2, b_vals = _nonzero_modes(b)
    if k1.size == 0 or k2.size == 0:
        return np.zeros(2 * out_bound + 1, dtype=np.complex128)
    K1 = k1[:, None]
    K2 = k2[None, :]
    terms = (
        np.multiply.outer(a_vals, b_vals)
        * weight(K1, K2)
        * phase_factor(bilinear_phase(K1, K2), t)
    )
    return _scatter(np.broadcast_to(K1 + K2, terms.shape), terms, out_bound)


def trilinear_sum(
    a: np.ndarray,
    b: np.ndarray,
    c: np.ndarray,
    t: float,
    weight: TrilinearWeight,
    out_bound: Optional[int] = None,
) -> np.ndarray:
    """
    sum_{k1+k2+k3=k} exp(i cubic(k1,k2,k3) t) weight a_{k1} b_{k2} c_{k3}.

    The first index is processed in blocks so that at most BLOCK_SIZE
    summands are held in memory.

    Args:
        a: Dense first argument
        b: Dense second argument
        c: Dense third argument
        t: Time in the phase
        weight: Summand weight
        out_bound: Output half-width, defaults to the sum of input bounds

    Returns:
        np.ndarray: Dense output of half-width out_bound
    """
    if out_bound is None:
        out_bound = a.shape[0] // 2 + b.shape[0] // 2 + c.shape[0] // 2
    out = np.zeros(2 * out_bound + 1, dtype=np.complex128)
    k1, a_vals = _nonzero_modes(a)
    k2, b_vals = _nonzero_modes(b)
    k3, c_vals = _nonzero_modes(c)
    if k1.size == 0 or k2.size == 0 or k3.size == 0:
        return out
    K2 = k2[None, :, None]
    K3 = k3[None, None, :]
    bc = np.multiply.outer(b_vals, c_vals)[None, :, :]
    chunk = max(1, BLOCK_SIZE // (k2.size * k3.size))
    for start in range(0, k1.size, chunk):
        K1 = k1[start : start + chunk, None, None]
        w = weight(K1, K2, K3)
        if not np.any(w):
            continue
        terms = (
            a_vals[start : start + chunk, None, None]
            * bc
            * w
            * phase_factor(cubic_phase(K1, K2, K3), t)
        )
        total = np.broadcast_to(K1 + K2 + K3, terms.shape)
        out += _scatter(total, terms, out_bound)
    return out


def pair_product(
    w: np.ndarray,
    phi: np.ndarray,
    t: float,
    keep: Optional[PairMask] = None,
) -> np.ndarray:
    """
    P_p = sum_{k3+k4=p} exp(3 i p k3 k4 t) w_{k3} phi_{k4}, P_0 = 0.

    Quadrilinear sums factor through P because their phase splits as
    cubic(k1, k2, p) + 3 p k3 k4.

    Args:
        w: Dense third argument of the quadrilinear sum
        phi: Dense fourth argument
        t: Time in the phase
        keep: Optional mask on the pair index p

    Returns:
        np.ndarray: Dense pair product
    """
    product = bilinear_sum(w, phi, t, _unit_weight)
    if keep is not None:
        bound = product.shape[0] // 2
        p = np.arange(-bound, bound + 1, dtype=np.int64)
        product = np.where(keep(p), product, 0)
    return product


def resize(array: np.ndarray, bound: int) -> np.ndarray:
    """Pad or truncate a dense array to half-width bound."""
    current = array.shape[-1] // 2
    if current == bound:
        return array
    if current > bound:
        return array[..., current - bound : current + bound + 1]
    pad = [(0, 0)] * (array.ndim - 1) + [(bound - current, bound - current)]
    return np.pad(array, pad)
