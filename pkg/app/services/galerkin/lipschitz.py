"""Empirical Lipschitz dependence of truncated solutions on the data."""

import logging
import math

import numpy as np

from app.models.simulation import LipschitzReport, SimConfig
from app.models.state import FourierState
from app.services.galerkin.system import TruncatedSystem, integrate
from app.services.spectrum import dense_sobolev_norm, sobolev_norm

logger = logging.getLogger(__name__)


def growth_rate(times: np.ndarray, ratios: np.ndarray) -> float:
    """Smallest C with ratio(t) <= exp(C t) on the samples (t > 0)."""
    positive = times > 0
    if not np.any(positive):
        return 0.0
    logs = np.log(np.maximum(ratios[positive], 1.0)) / times[positive]
    return float(np.max(logs))


def lipschitz_probe(
    v0: FourierState, w0: FourierState, theta: float, cfg: SimConfig
) -> LipschitzReport:
    """
    Ratio ||v(t) - w(t)||_theta / ||v0 - w0||_theta along two runs.

    Args:
        v0: First initial state
        w0: Second initial state
        theta: Sobolev index of the comparison
        cfg: Simulation parameters shared by both runs

    Returns:
        LipschitzReport: Ratio series and the fitted growth rate; a
        degenerate report of zeros when v0 == w0
    """
    initial = sobolev_norm(v0 - w0, theta)
    system = TruncatedSystem(cfg.m)
    first = integrate(v0, cfg, system)
    if initial == 0:
        logger.warning("Identical data given to lipschitz_probe")
        return LipschitzReport(
            theta=theta,
            times=first.times,
            ratios=np.zeros(len(first.times)),
            degenerate=True,
            notes=["identical initial data"],
        )
    second = integrate(w0, cfg, system)
    bound = max(first.bound, second.bound)
    diff = np.stack(
        [
            a.to_dense(bound) - b.to_dense(bound)
            for a, b in zip(first.states, second.states)
        ]
    )
    ratios = dense_sobolev_norm(diff, theta) / initial
    rate = growth_rate(first.times, ratios)
    peak = float(np.max(ratios))
    logger.info(
        f"Lipschitz probe theta={theta}: max ratio {peak:.4f}, "
        f"growth rate {rate:.4f}"
    )
    notes = []
    if not math.isfinite(rate):
        notes.append("non-finite growth rate")
    return LipschitzReport(
        theta=theta,
        times=first.times,
        ratios=ratios,
        growth_rate=rate,
        notes=notes,
    )
