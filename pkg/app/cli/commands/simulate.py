"""simulate: integrate the truncated system and report its energy."""

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
from app.services.galerkin import integrate
from app.services.spectrum import sobolev_norm
from app.utils.serialization import (
    STATE_COLUMNS,
    TRAJECTORY_COLUMNS,
    state_rows,
    trajectory_rows,
    write_table,
)

logger = logging.getLogger(__name__)

NAME = "simulate"


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        NAME,
        parents=[common_parser()],
        help="Integrate the truncated system with RK4",
    )
    add_datum_arguments(parser)


def run(config: RunConfig) -> int:
    trajectory = integrate(initial_state(config), sim_config(config))
    artifacts = [
        write_table(
            table_path(config, "trajectory"),
            TRAJECTORY_COLUMNS,
            trajectory_rows(trajectory),
            config.format,
        ),
        write_table(
            table_path(config, "final_state"),
            STATE_COLUMNS,
            state_rows(trajectory.final),
            config.format,
        ),
    ]
    drift = trajectory.energy_drift()
    energy = trajectory.energy_series()
    results = {
        "trajectory": trajectory.to_dict(),
        "energy_initial": float(energy[0]),
        "energy_final": float(energy[-1]),
        "norm_final_h1": sobolev_norm(trajectory.final, 1.0),
    }
    highlights = [
        ("truncation m", config.m),
        ("samples", len(trajectory)),
        ("final time", float(trajectory.times[-1])),
        ("energy", float(energy[0])),
        ("relative energy drift", drift),
    ]
    return finish(config, results, highlights, artifacts)
