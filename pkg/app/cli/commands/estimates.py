"""estimates: randomized bound suites and lattice-sum experiments."""

import argparse
import logging
from collections import defaultdict
from typing import Any, Dict, List, Tuple

from app.cli.helpers import Highlights, common_parser, finish, table_path
from app.config import RunConfig
from app.models.bounds import BoundKind, BoundReport, StabilityCurve
from app.services.estimates import (
    SUITES,
    b30_decay_check,
    k3_sum_estimate,
    run_suite,
)
from app.utils.serialization import TRIAL_COLUMNS, trial_rows, write_table

logger = logging.getLogger(__name__)

NAME = "estimates"

K3_SUITE = "k3"
# gamma + delta is at most 1.5 or at least 2, clear of 5/3
K3_AXIS = [0.0, 0.25, 0.5, 0.75, 2.0]
# (p, gamma, delta) over the 5 x 5 grid of weight exponents
K3_GRID: List[Tuple[float, float, float]] = [
    (0.0, gamma, delta) for gamma in K3_AXIS for delta in K3_AXIS
]
DEFAULT_K3_CUTOFF = 16
K3_COLUMNS = ["p", "gamma", "delta", "cutoff", "partial_sum"]


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        NAME,
        parents=[common_parser()],
        help="Run a suite of operator bound checks",
    )
    parser.add_argument(
        "--suite",
        choices=sorted([*SUITES, K3_SUITE]),
        help="Bound suite, or k3 for the lattice-sum grid",
    )
    parser.add_argument(
        "--m-values",
        dest="m_values",
        help="Comma-separated truncation sizes",
    )
    parser.add_argument(
        "--decay-n",
        dest="decay_n_values",
        help="Split indices of the B30 decay check (smallest, largest)",
    )
    parser.add_argument(
        "--epsilon", type=float, help="Smoothing gain of B4 and EE11"
    )
    parser.add_argument(
        "--grid", type=int, help="Base cutoff N of the k3 lattice sums"
    )


def _verdict(report: BoundReport) -> str:
    if report.passed is None:
        return f"max ratio {report.max_ratio:.4g} (empirical)"
    word = "pass" if report.passed else "FAIL"
    return f"max ratio {report.max_ratio:.4g} <= {report.constant:.4g} {word}"


def _stability(reports: List[BoundReport]) -> List[StabilityCurve]:
    """Max ratio against m for every empirical bound of the batch."""
    grouped: Dict[str, List[BoundReport]] = defaultdict(list)
    for report in reports:
        if report.spec.kind is BoundKind.EMPIRICAL:
            grouped[report.bound_id].append(report)
    curves = []
    for bound_id, batch in grouped.items():
        batch.sort(key=lambda r: r.m)
        curve = StabilityCurve(
            bound_id=bound_id,
            m_values=[r.m for r in batch],
            max_ratios=[r.max_ratio for r in batch],
        )
        if not curve.stable:
            logger.warning(f"{bound_id}: max ratio unstable in m")
        curves.append(curve)
    return curves


def _run_k3(config: RunConfig) -> int:
    cutoff = config.grid or DEFAULT_K3_CUTOFF
    reports = [
        k3_sum_estimate(p, gamma, delta, cutoff)
        for p, gamma, delta in K3_GRID
    ]
    rows = [
        [r.p, r.gamma, r.delta, level, total]
        for r in reports
        for level, total in zip(r.cutoffs, r.partial_sums)
    ]
    table = write_table(
        table_path(config, "k3"), K3_COLUMNS, rows, config.format
    )
    passed = all(not r.notes for r in reports)
    highlights: Highlights = [
        (
            f"p={r.p:g} gamma+delta={r.gamma + r.delta:g}",
            f"{r.verdict.value} (increment ratio {r.increment_ratio:.3f})",
        )
        for r in reports
    ]
    results = {"k3": [r.to_dict() for r in reports]}
    return finish(config, results, highlights, [table], passed)


def run(config: RunConfig) -> int:
    if config.suite == K3_SUITE:
        return _run_k3(config)
    reports = run_suite(
        config.suite,
        config.trials,
        config.m_values,
        config.seed,
        overrides={"epsilon": config.epsilon},
    )
    table = write_table(
        table_path(config, "trials"),
        TRIAL_COLUMNS,
        trial_rows(reports),
        config.format,
    )
    curves = _stability(reports)
    results: Dict[str, Any] = {
        "suite": config.suite,
        "reports": [r.to_dict() for r in reports],
        "stability": [curve.to_dict() for curve in curves],
    }
    highlights: Highlights = [
        (f"{r.bound_id} m={r.m}", _verdict(r)) for r in reports
    ]
    passed = all(r.passed is not False for r in reports)

    if config.suite == "appendix-default" and 0 < config.s <= 1:
        n_small = min(config.decay_n_values)
        n_large = max(config.decay_n_values)
        # the inputs need modes above the larger split index
        decay = b30_decay_check(
            config.s,
            n_small,
            n_large,
            config.trials,
            max(max(config.m_values), 2 * n_large),
            config.seed,
        )
        results["b30_decay"] = decay.to_dict()
        highlights.append(
            (
                f"B30 decay n={decay.n_small}->{decay.n_large}",
                f"{decay.observed:.4g} vs (n ratio)^s {decay.expected:.4g}",
            )
        )
        passed = passed and decay.consistent
    return finish(config, results, highlights, [table], passed)
