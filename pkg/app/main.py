"""Entry point of the kdv-lab command."""

import logging
from logging.config import dictConfig
from typing import Any, Dict, Optional, Sequence

from pydantic import ValidationError as PydanticValidationError

from app.cli.router import build_parser, run
from app.config import LogConfig, load_config
from app.exceptions import KdVLabError

logger = logging.getLogger(__name__)

# Parser entries that are not RunConfig fields
_PARSER_ONLY = {"config"}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse the command line, merge the configuration and run.

    Precedence: flags > config file > environment > defaults.

    Args:
        argv: Arguments without the program name, sys.argv by default

    Returns:
        int: Exit status (0 ok, 1 validation error, 2 failed check)
    """
    args = build_parser().parse_args(argv)
    overrides: Dict[str, Any] = {
        key: value
        for key, value in vars(args).items()
        if key not in _PARSER_ONLY
    }
    try:
        config = load_config(args.config, overrides)
    except PydanticValidationError as e:
        dictConfig(LogConfig().model_dump())
        logger.error(f"Invalid configuration: {e}")
        return 1
    except KdVLabError as e:
        dictConfig(LogConfig().model_dump())
        logger.error(e.message)
        return e.exit_code

    dictConfig(LogConfig(LOG_LEVEL=config.log_level).model_dump())
    logger.debug(f"Configuration: {config.to_artifact()}")
    return run(config)


if __name__ == "__main__":
    raise SystemExit(main())
