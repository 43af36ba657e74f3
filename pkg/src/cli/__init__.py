"""Command-line interface module."""

from .commands import CommandRunner, build_parser, parse_args, read_series, run

__all__ = ["CommandRunner", "build_parser", "parse_args", "read_series", "run"]
