"""forms-check: residuals of the three integrated forms on one run."""

import argparse
import logging
from typing import Dict

from app.cli.helpers import (
    add_datum_arguments,
    common_parser,
    finish,
    initial_state,
    sim_config,
)
from app.config import RunConfig
from app.services.galerkin import (
    integrate,
    residual_first_form,
    residual_second_form,
    residual_third_form,
)

logger = logging.getLogger(__name__)

NAME = "forms-check"


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        NAME,
        parents=[common_parser()],
        help="Check the first, second and third integrated forms",
    )
    add_datum_arguments(parser)
    parser.add_argument(
        "--n-values",
        dest="n_values",
        help="Comma-separated split indices for the third form",
    )
    parser.add_argument(
        "--energy-scale",
        dest="energy_scale",
        type=float,
        help="Multiply the resonant energy (negative control when != 1)",
    )


def run(config: RunConfig) -> int:
    trajectory = integrate(initial_state(config), sim_config(config))
    residuals: Dict[str, float] = {
        "first": residual_first_form(trajectory),
        "second": residual_second_form(trajectory),
    }
    for n in config.n_values:
        residuals[f"third_n{n}"] = residual_third_form(trajectory, n)
    passed = all(value < config.tol for value in residuals.values())

    results = {
        "samples": len(trajectory),
        "energy_drift": trajectory.energy_drift(),
        "residuals": residuals,
        "tolerance": config.tol,
    }
    highlights = [
        (f"residual {name}", value) for name, value in residuals.items()
    ]
    if config.energy_scale != 1.0:
        energy = float(trajectory.energy_series()[0])
        control = residual_second_form(
            trajectory, energy=config.energy_scale * energy
        )
        results["negative_control"] = {
            "energy_scale": config.energy_scale,
            "residual_second": control,
        }
        highlights.append(("second, scaled energy", control))
    highlights.append(("tolerance", config.tol))
    return finish(config, results, highlights, [], passed)
