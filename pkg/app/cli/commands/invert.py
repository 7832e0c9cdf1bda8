"""invert: explicit and dense inversion of the linearised operator."""

import argparse
import logging

from app.cli.helpers import (
    add_datum_arguments,
    common_parser,
    finish,
    initial_state,
    table_path,
)
from app.config import RunConfig
from app.services.inverse_operator import (
    inverse_norm_sweep,
    invert_dense,
    invert_explicit,
)
from app.services.spectrum import random_state, sobolev_norm
from app.utils.serialization import STATE_COLUMNS, state_rows, write_table

logger = logging.getLogger(__name__)

NAME = "invert"

SWEEP_AMPLITUDES = [0.5, 1.0, 2.0, 4.0]


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        NAME,
        parents=[common_parser()],
        help="Invert v - c B2(phi, v) explicitly and by a dense solve",
    )
    add_datum_arguments(parser)
    parser.add_argument("--c", type=float, help="Operator coefficient")
    parser.add_argument(
        "--grid", type=int, help="Collocation points of the explicit solver"
    )


def run(config: RunConfig) -> int:
    phi = initial_state(config)
    f = random_state(config.seed + 1, config.m, 0.0, 1.0)
    t = config.T
    explicit = invert_explicit(phi, f, t, config.c, config.grid)
    cutoff = max(4 * (phi.support_bound + f.support_bound), config.m)
    dense = invert_dense(phi, f, t, config.c, cutoff)
    agreement = sobolev_norm(explicit.solution - dense.solution, 0.0)
    passed = (
        max(explicit.residual, dense.residual, agreement) < config.tol
    )
    sweep = inverse_norm_sweep(phi, SWEEP_AMPLITUDES, t, config.c, cutoff)

    table = write_table(
        table_path(config, "solution"),
        STATE_COLUMNS,
        state_rows(explicit.solution),
        config.format,
    )
    results = {
        "explicit": explicit.to_dict(),
        "dense": dense.to_dict(),
        "agreement": agreement,
        "inverse_norm_sweep": [
            {"amplitude": a, "inverse_norm": norm} for a, norm in sweep
        ],
    }
    highlights = [
        ("coefficient c", config.c),
        ("explicit residual", explicit.residual),
        ("dense residual", dense.residual),
        ("dense condition", dense.condition),
        ("explicit vs dense", agreement),
    ]
    return finish(config, results, highlights, [table], passed)
