"""Shared argument groups, inputs and output handling for subcommands."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple

from app.config import RunConfig
from app.models.simulation import SimConfig
from app.models.state import FourierState
from app.services.spectrum import mode_pair, random_state
from app.utils.serialization import load_state, write_summary
from app.utils.template_loader import render_report

logger = logging.getLogger(__name__)

Highlights = List[Tuple[str, Any]]

# Smooth random data used by the datum "random": spectral decay 3,
# normalised in L2.
RANDOM_DATUM_DECAY = 3.0


def common_parser() -> argparse.ArgumentParser:
    """
    Parent parser with the flags every subcommand accepts.

    Every default is None so that unset flags fall through to the config
    file, the environment and finally the RunConfig defaults.
    """
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("common options")
    group.add_argument(
        "--config", type=Path, default=None, help="key=value config file"
    )
    group.add_argument("--m", type=int, help="Galerkin truncation size")
    group.add_argument("--n", type=int, help="Low/high splitting index")
    group.add_argument("--dt", type=float, help="RK4 time step")
    group.add_argument("--T", dest="T", type=float, help="Final time")
    group.add_argument("--s", type=float, help="Sobolev index")
    group.add_argument("--omega", type=float, help="Rotation frequency")
    group.add_argument("--seed", type=int, help="Random seed")
    group.add_argument("--trials", type=int, help="Trials per bound")
    group.add_argument("--tol", type=float, help="Pass tolerance")
    group.add_argument("--out", type=Path, help="Output directory")
    group.add_argument(
        "--format", choices=["csv", "json"], help="Tabular artifact format"
    )
    group.add_argument(
        "--strict",
        action="store_true",
        default=None,
        help="Exit with status 2 when a check fails",
    )
    group.add_argument(
        "--log-level", dest="log_level", help="Logging level name"
    )
    return parser


def add_datum_arguments(parser: argparse.ArgumentParser) -> None:
    """Flags selecting the initial state."""
    parser.add_argument(
        "--v0", dest="v0_path", type=Path, help="JSON or CSV state file"
    )
    parser.add_argument(
        "--datum",
        choices=["pair", "random", "zero"],
        help="Built-in datum when --v0 is not given",
    )
    parser.add_argument(
        "--amplitude", type=float, help="Amplitude of the built-in datum"
    )
    parser.add_argument(
        "--record-stride",
        dest="record_stride",
        type=int,
        help="Record every k-th step",
    )
    parser.add_argument(
        "--substeps", type=int, help="RK4 steps per time step"
    )


def initial_state(config: RunConfig) -> FourierState:
    """
    The initial state selected by the configuration.

    ``pair`` is the mode pair v_1 = v_{-1} = amplitude, ``random`` a
    smooth random state of L2 norm amplitude drawn from the seed and
    ``zero`` the zero state. A state file takes precedence.
    """
    if config.v0_path is not None:
        return load_state(config.v0_path)
    if config.datum == "zero":
        return FourierState.zero()
    if config.datum == "random":
        return random_state(
            config.seed,
            config.m,
            0.0,
            config.amplitude,
            decay=RANDOM_DATUM_DECAY,
        )
    return mode_pair(1, config.amplitude)


def sim_config(config: RunConfig) -> SimConfig:
    return SimConfig(
        m=config.m,
        dt=config.dt,
        T=config.T,
        n=config.n,
        record_stride=config.record_stride,
        substeps=config.substeps,
    )


def table_path(config: RunConfig, name: str) -> Path:
    """``<out>/<subcommand>_<name>``; the writer adds the suffix."""
    return config.out / f"{config.subcommand}_{name}"


def finish(
    config: RunConfig,
    results: Dict[str, Any],
    highlights: Highlights,
    artifacts: Sequence[Path],
    passed: bool = True,
) -> int:
    """
    Write the summary JSON, print the text report and pick the status.

    Returns:
        int: 0, or 2 when a check failed in strict mode
    """
    results = {**results, "passed": passed}
    summary = write_summary(config, config.subcommand, results)
    status = "ok" if passed else "failed"
    report = render_report(
        config.subcommand,
        config.seed,
        highlights,
        [summary, *artifacts],
        status,
    )
    sys.stdout.write(report)
    if not passed:
        logger.warning(f"{config.subcommand}: checks failed")
        if config.strict:
            return 2
    return 0
