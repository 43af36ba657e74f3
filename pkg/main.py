#!/usr/bin/env python3
"""Main entry point for the beta-sarma command-line toolkit."""

import sys
from typing import Optional, Sequence

from config import get_settings
from src.utils import BSarmaError, get_logger, setup_logging

logger = get_logger(__name__)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run the command and return its exit status."""
    from src.cli import parse_args, run

    config = parse_args(argv)
    setup_logging(config.debug or get_settings().debug)
    return run(config)


def cli() -> None:
    """Console script entry point."""
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\nInterrupted", file=sys.stderr)
        sys.exit(130)
    except (BSarmaError, ValueError, OSError) as e:
        logger.error("Command failed", error=str(e))
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    cli()
