"""Command-line interface of the laboratory."""

from app.cli.router import build_parser, run

__all__ = ["build_parser", "run"]
