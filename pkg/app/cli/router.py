import argparse
import logging
from types import ModuleType
from typing import Dict

from app.cli.commands import (
    burgers,
    estimates,
    forms_check,
    invert,
    lipschitz,
    resonance,
    simulate,
)
from app.config import RunConfig
from app.exceptions import KdVLabError

logger = logging.getLogger(__name__)

# Subcommand name -> module exposing register(subparsers) and run(config)
COMMANDS: Dict[str, ModuleType] = {
    simulate.NAME: simulate,
    forms_check.NAME: forms_check,
    resonance.NAME: resonance,
    invert.NAME: invert,
    burgers.NAME: burgers,
    estimates.NAME: estimates,
    lipschitz.NAME: lipschitz,
}


def build_parser() -> argparse.ArgumentParser:
    """Top-level parser with one subparser per experiment."""
    parser = argparse.ArgumentParser(
        prog="kdv-lab",
        description=(
            "Spectral laboratory for normal-form averaging of the "
            "periodic KdV equation"
        ),
    )
    subparsers = parser.add_subparsers(
        dest="subcommand", metavar="SUBCOMMAND", required=True
    )
    for command in COMMANDS.values():
        command.register(subparsers)
    return parser


def run(config: RunConfig) -> int:
    """
    Execute the configured subcommand.

    Args:
        config: Validated run configuration

    Returns:
        int: Process exit status (0 ok, 1 validation or numerical
        failure, 2 failed check in strict mode)
    """
    command = COMMANDS.get(config.subcommand)
    if command is None:
        logger.error(f"Unknown subcommand '{config.subcommand}'")
        return 1
    logger.info(f"Running {config.subcommand} (seed {config.seed})")
    try:
        status: int = command.run(config)
    except KdVLabError as e:
        logger.error(e.message)
        if e.detail != e.message:
            logger.debug(e.detail)
        return e.exit_code
    return status
