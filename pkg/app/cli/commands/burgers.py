"""burgers: characteristic solution and blow-up scan of rotating Burgers."""

import argparse
import logging
import math
from typing import List

import numpy as np

from app.cli.helpers import common_parser, finish, table_path
from app.config import RunConfig
from app.models.burgers import AnalyticProfile
from app.services.burgers import (
    omega_sweep,
    rotation_threshold,
    solve_implicit,
)
from app.utils.serialization import (
    BURGERS_COLUMNS,
    blowup_rows,
    burgers_rows,
    write_table,
)

logger = logging.getLogger(__name__)

NAME = "burgers"

DEFAULT_SAMPLES = 64
SOLUTION_SNAPSHOTS = 11
SCAN_COLUMNS = ["omega", "t", "min_denominator"]


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        NAME,
        parents=[common_parser()],
        help="Solve rotating complex Burgers along characteristics",
    )
    parser.add_argument(
        "--profile",
        choices=["sine", "linear"],
        help="amplitude*sin(z) or -amplitude*z",
    )
    parser.add_argument(
        "--amplitude", type=float, help="Amplitude of the profile"
    )
    parser.add_argument(
        "--strip", type=float, help="Half-width of the analyticity strip"
    )
    parser.add_argument(
        "--omega-values",
        dest="omega_values",
        help="Comma-separated rotation rates to sweep",
    )
    parser.add_argument(
        "--grid", type=int, help="Number of real sample points z"
    )


def build_profile(config: RunConfig) -> AnalyticProfile:
    if config.profile == "linear":
        return AnalyticProfile.linear(-config.amplitude)
    return AnalyticProfile.sine(config.amplitude, config.strip)


def sample_points(count: int) -> np.ndarray:
    """Equispaced real points on [0, 2 pi)."""
    return 2.0 * math.pi * np.arange(count) / count + 0j


def run(config: RunConfig) -> int:
    phi = build_profile(config)
    z = sample_points(config.grid or DEFAULT_SAMPLES)
    omegas: List[float] = sorted(
        config.omega_values or [config.omega], key=abs
    )
    scans = omega_sweep(phi, omegas, z, config.T)

    # Snapshots at the slowest rotation, stopped at the threshold.
    first = scans[0]
    horizon = config.T
    if first.blew_up and first.t_threshold is not None:
        horizon = first.t_threshold
    snapshots = []
    guess = None
    for t in np.linspace(0.0, horizon, SOLUTION_SNAPSHOTS):
        solution = solve_implicit(phi, z, float(t), omegas[0], initial=guess)
        snapshots.append(solution)
        guess = solution.v

    artifacts = [
        write_table(
            table_path(config, "solution"),
            BURGERS_COLUMNS,
            burgers_rows(snapshots),
            config.format,
        ),
        write_table(
            table_path(config, "scan"),
            SCAN_COLUMNS,
            [
                [omega, *row]
                for omega, result in zip(omegas, scans)
                for row in blowup_rows(result)
            ],
            config.format,
        ),
    ]
    threshold = rotation_threshold(phi)
    results = {
        "profile": phi.name,
        "sup_dphi": phi.sup_dphi,
        "rotation_threshold": threshold,
        "scans": {
            str(omega): result.to_dict()
            for omega, result in zip(omegas, scans)
        },
        "snapshots": [solution.to_dict() for solution in snapshots],
    }
    highlights = [("profile", phi.name), ("2 sup|phi'|", threshold)]
    for omega, result in zip(omegas, scans):
        if result.blew_up and result.t_star is not None:
            value = f"blow-up at t* = {result.t_star:.6g}"
        else:
            value = (
                "no blow-up, min denominator "
                f"{result.min_denominator:.4g}"
            )
        highlights.append((f"omega {omega:g}", value))
    return finish(config, results, highlights, artifacts)
