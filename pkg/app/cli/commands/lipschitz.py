"""lipschitz: growth of the difference of two nearby solutions."""

import argparse
import logging

from app.cli.helpers import (
    add_datum_arguments,
    common_parser,
    finish,
    initial_state,
    sim_config,
    table_path,
)
from app.config import RunConfig
from app.services.galerkin import lipschitz_probe
from app.services.spectrum import random_state
from app.utils.serialization import write_table

logger = logging.getLogger(__name__)

NAME = "lipschitz"

RATIO_COLUMNS = ["theta", "t", "ratio"]


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        NAME,
        parents=[common_parser()],
        help="Lipschitz ratios of two solutions at several indices",
    )
    add_datum_arguments(parser)
    parser.add_argument(
        "--theta",
        dest="theta_values",
        help="Comma-separated Sobolev indices of the comparison",
    )
    parser.add_argument(
        "--perturbation",
        type=float,
        help="L2 size of the difference of the two data",
    )


def run(config: RunConfig) -> int:
    v0 = initial_state(config)
    direction = random_state(config.seed, config.m, 0.0, 1.0)
    w0 = v0 + direction * config.perturbation
    cfg = sim_config(config)
    reports = [
        lipschitz_probe(v0, w0, theta, cfg) for theta in config.theta_values
    ]
    rows = [
        [report.theta, float(t), float(ratio)]
        for report in reports
        for t, ratio in zip(report.times, report.ratios)
    ]
    table = write_table(
        table_path(config, "ratios"), RATIO_COLUMNS, rows, config.format
    )
    results = {
        "perturbation": config.perturbation,
        "reports": [report.to_dict() for report in reports],
    }
    highlights = [
        (
            f"theta {report.theta:g}",
            f"max ratio {report.max_ratio:.4g}, "
            f"growth rate {report.growth_rate:.4g}",
        )
        for report in reports
    ]
    return finish(config, results, highlights, [table])
