"""Resonant triples of the cubic interaction and their closed-form sum."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from app.exceptions import InvalidParameterError
from app.models.state import FourierState
from app.services.operators import weights
from app.services.operators.kernels import trilinear_sum

logger = logging.getLogger(__name__)


class ResonanceClass(str, Enum):
    """The six disjoint families of resonant triples summing to k.

    j ranges over nonzero integers with |j| != |k|.
    """

    S1 = "S1"  # (k, -k, k)
    S2 = "S2"  # (-k, k, k)
    S3 = "S3"  # (k, k, -k)
    S4 = "S4"  # (j, -j, k)
    S5 = "S5"  # (k, j, -j)
    S6 = "S6"  # (j, k, -j)


def classify(k1: int, k2: int, k3: int) -> Optional[ResonanceClass]:
    """
    Resonance class of a triple, None if nonresonant or degenerate.

    Args:
        k1: First wavenumber
        k2: Second wavenumber
        k3: Third wavenumber

    Returns:
        Optional[ResonanceClass]: The class, or None
    """
    if 0 in (k1, k2, k3) or k1 + k2 + k3 == 0:
        return None
    a, b, c = k1 + k2 == 0, k2 + k3 == 0, k3 + k1 == 0
    if a and b:
        return ResonanceClass.S1
    if a and c:
        return ResonanceClass.S2
    if b and c:
        return ResonanceClass.S3
    if a:
        return ResonanceClass.S4
    if b:
        return ResonanceClass.S5
    if c:
        return ResonanceClass.S6
    return None


@dataclass(frozen=True)
class ResonantTriple:
    """A resonant index triple together with its class."""

    k1: int
    k2: int
    k3: int
    cls: ResonanceClass

    def __post_init__(self) -> None:
        found = classify(self.k1, self.k2, self.k3)
        if found is not self.cls:
            raise InvalidParameterError(
                f"Triple ({self.k1}, {self.k2}, {self.k3}) is not in "
                f"{self.cls.value}"
            )

    @property
    def k(self) -> int:
        return self.k1 + self.k2 + self.k3

    @property
    def indices(self) -> Tuple[int, int, int]:
        return (self.k1, self.k2, self.k3)


def enumerate_resonant(k: int, support: int) -> List[ResonantTriple]:
    """
    All resonant triples with k1+k2+k3 = k and 0 < |k_i| <= support.

    Args:
        k: Output wavenumber, nonzero
        support: Bound on |k_i|

    Returns:
        List[ResonantTriple]: Triples sorted by (class, k1, k2)
    """
    if k == 0:
        raise InvalidParameterError("Resonant triples need k != 0")
    triples: List[ResonantTriple] = []
    span = range(-support, support + 1)
    for k1 in span:
        for k2 in span:
            k3 = k - k1 - k2
            if abs(k3) > support:
                continue
            cls = classify(k1, k2, k3)
            if cls is not None:
                triples.append(ResonantTriple(k1, k2, k3, cls))
    triples.sort(key=lambda tr: (tr.cls.value, tr.k1, tr.k2))
    logger.debug(f"Found {len(triples)} resonant triples for k={k}")
    return triples


def resonance_split(
    u: FourierState, v: FourierState, w: FourierState, t: float
) -> Tuple[FourierState, FourierState]:
    """
    Split R3 into its resonant and nonresonant parts.

    The resonant part carries no exponential (its phase vanishes); the
    nonresonant part keeps the phases of time t.

    Returns:
        Tuple[FourierState, FourierState]: (res, nres)
    """
    a, b, c = u.to_dense(), v.to_dense(), w.to_dense()
    res = trilinear_sum(a, b, c, 0.0, weights.r3_res_weight)
    nres = trilinear_sum(a, b, c, t, weights.r3_nres_weight)
    return FourierState.from_dense(res), FourierState.from_dense(nres)


def a_res(v: FourierState, energy: float) -> FourierState:
    """
    Closed form of the resonant sum, (v_k / k)(energy - |v_k|^2).

    Args:
        v: State
        energy: ||v||_0^2 for the instantaneous form, ||v(0)||_0^2 for
            the conserved form

    Returns:
        FourierState: A_res(v)
    """
    if energy < 0 or not np.isfinite(energy):
        raise InvalidParameterError(f"energy must be >= 0, got {energy}")
    return FourierState(
        {k: (z / k) * (energy - abs(z) ** 2) for k, z in v.items()}
    )


def resonant_class_sums(v: FourierState) -> Dict[ResonanceClass, FourierState]:
    """
    The resonant part of R3(v, v, v), class by class.

    Each class is a one-parameter family, so the sums are evaluated
    directly from their parametrisation.
    """
    pair_terms = {j: z * v[-j] for j, z in v.items()}
    sums: Dict[ResonanceClass, Dict[int, complex]] = {
        cls: {} for cls in ResonanceClass
    }
    for k, z in v.items():
        mirror = v[-k]
        sums[ResonanceClass.S1][k] = z * mirror * z / k
        sums[ResonanceClass.S2][k] = mirror * z * z / (-k)
        sums[ResonanceClass.S3][k] = z * z * mirror / k
        others = [(j, pj) for j, pj in pair_terms.items() if abs(j) != abs(k)]
        sums[ResonanceClass.S4][k] = sum((pj * z / j for j, pj in others), 0j)
        sums[ResonanceClass.S5][k] = (z / k) * sum(
            (pj for _, pj in others), 0j
        )
        sums[ResonanceClass.S6][k] = sum(
            (v[j] * z * v[-j] / j for j, _ in others), 0j
        )
    return {cls: FourierState(modes) for cls, modes in sums.items()}


def resonant_sum(v: FourierState) -> FourierState:
    """Resonant part of R3(v, v, v) as the sum over S1..S6."""
    total = FourierState()
    for part in resonant_class_sums(v).values():
        total = total + part
    return total
