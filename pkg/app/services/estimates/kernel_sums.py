"""Truncated sums of the cubed nonresonant lattice kernel.

K(k1, k2, k3) = |k2|^g |k3|^d / (|k1|^{1-p} |k1+k2| |k2+k3| |k3+k1|
|k1+k2+k3|^p) over nonzero indices with (k1+k2)(k2+k3)(k3+k1) != 0.
The sum of K^3 converges exactly when g + d < 5/3; along the lines
where two pair sums stay bounded the increments between the cutoffs N
and 2N scale like 2^{3(g+d)-5}.
"""

import logging
from typing import List

import numpy as np

from app.exceptions import InvalidParameterError
from app.models.bounds import ConvergenceVerdict, KernelSumReport

logger = logging.getLogger(__name__)

THRESHOLD = 5.0 / 3.0
INCONCLUSIVE_BAND = 0.05
GEOMETRIC_RATIO = 0.9
MAX_BOX = 1024


def _kernel_cubed(
    k1: int,
    k2: np.ndarray,
    k3: np.ndarray,
    p: float,
    gamma: float,
    delta: float,
) -> np.ndarray:
    s12 = k1 + k2
    s23 = k2 + k3
    s31 = k3 + k1
    total = k1 + k2 + k3
    valid = (s12 != 0) & (s23 != 0) & (s31 != 0) & (total != 0)
    out = np.zeros(k2.shape, dtype=np.float64)
    if not np.any(valid):
        return out
    a2 = np.abs(k2[valid]).astype(np.float64)
    a3 = np.abs(k3[valid]).astype(np.float64)
    denominator = (
        float(abs(k1)) ** (1.0 - p)
        * np.abs(s12[valid])
        * np.abs(s23[valid])
        * np.abs(s31[valid])
        * np.abs(total[valid]).astype(np.float64) ** p
    )
    out[valid] = (a2**gamma * a3**delta / denominator) ** 3
    return out


def k3_sum_estimate(
    p: float, gamma: float, delta: float, cutoff: int
) -> KernelSumReport:
    """
    Partial sums of K^3 over the boxes max|k_i| <= N, 2N, 4N.

    One pass over the 4N box accumulates all three sums; the verdict
    compares the ratio of the last two increments with 0.9 and is
    inconclusive within 0.05 of the critical exponent g + d = 5/3.

    Args:
        p: Exponent in [0, 1]
        gamma: Weight exponent of k2
        delta: Weight exponent of k3
        cutoff: Base cutoff N >= 1

    Returns:
        KernelSumReport: Partial sums, increment ratio and verdict

    Raises:
        InvalidParameterError: If p leaves [0, 1], N < 1 or 4N > 1024
    """
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"p must lie in [0, 1], got {p}")
    if cutoff < 1:
        raise InvalidParameterError(f"cutoff must be >= 1, got {cutoff}")
    box = 4 * cutoff
    if box > MAX_BOX:
        raise InvalidParameterError(
            f"4 * cutoff = {box} exceeds the largest box {MAX_BOX}"
        )
    cutoffs = [cutoff, 2 * cutoff, box]
    axis = np.concatenate(
        [np.arange(-box, 0), np.arange(1, box + 1)]
    ).astype(np.int64)
    K2, K3 = np.meshgrid(axis, axis, indexing="ij")
    reach = np.maximum(np.abs(K2), np.abs(K3))
    sums = np.zeros(3, dtype=np.float64)
    for k1 in axis.tolist():
        values = _kernel_cubed(k1, K2, K3, p, gamma, delta)
        extent = np.maximum(reach, abs(k1))
        for index, level in enumerate(cutoffs):
            sums[index] += float(np.sum(values[extent <= level]))

    first = sums[1] - sums[0]
    second = sums[2] - sums[1]
    ratio = second / first if first > 0 else float("inf")
    expected = 2.0 ** (3.0 * (gamma + delta) - 5.0)
    notes: List[str] = []
    if abs(gamma + delta - THRESHOLD) < INCONCLUSIVE_BAND:
        verdict = ConvergenceVerdict.INCONCLUSIVE
        notes.append("gamma + delta within 0.05 of 5/3")
    elif ratio < GEOMETRIC_RATIO:
        verdict = ConvergenceVerdict.CONVERGING
    else:
        verdict = ConvergenceVerdict.DIVERGING
    converging = verdict == ConvergenceVerdict.CONVERGING
    decided = verdict != ConvergenceVerdict.INCONCLUSIVE
    if decided and converging != (gamma + delta < THRESHOLD):
        notes.append("verdict disagrees with the critical exponent 5/3")
        logger.warning(
            f"K3 sum p={p}, gamma={gamma}, delta={delta}: verdict "
            f"{verdict.value} with increment ratio {ratio:.4f}"
        )
    logger.info(
        f"K3 sum p={p}, gamma={gamma}, delta={delta}: partial sums "
        f"{sums.tolist()}, increment ratio {ratio:.4f}"
    )
    return KernelSumReport(
        p=p,
        gamma=gamma,
        delta=delta,
        cutoffs=cutoffs,
        partial_sums=sums.tolist(),
        increment_ratio=ratio,
        expected_ratio=expected,
        verdict=verdict,
        notes=notes,
    )
