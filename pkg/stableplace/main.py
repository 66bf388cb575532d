"""
Command-line entry point for the stableplace toolkit.

    python -m stableplace [--config FILE] [--log-level LEVEL] [--log-file FILE] [--threads N] <command> ...

Exit codes: 0 on success, 1 on a processing error, 2 on a usage error.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from loguru import logger

from stableplace.cli import SUBCOMMANDS
from stableplace.cli.common import override
from stableplace.core.config import load_config
from stableplace.core.constants import TOOL_NAME, TOOL_VERSION
from stableplace.core.exceptions import StablePlaceError
from stableplace.core.logging import bind_run, setup_logging

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=TOOL_NAME,
        description="Stable-plane annotation, placement baselines and placement benchmarks for rigid objects",
    )
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {TOOL_VERSION}")
    parser.add_argument("--config", type=Path, default=None, help="TOML or JSON configuration file")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ERROR")
    parser.add_argument("--log-file", default=None, help="Also log to this rotating file")
    parser.add_argument("--threads", type=int, default=None, help="Worker pool size")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="<command>")
    for module in SUBCOMMANDS:
        module.register(subparsers)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK

    try:
        config = override(
            load_config(args.config),
            threads=args.threads,
            log_level=args.log_level,
            log_file=args.log_file,
        )
    except StablePlaceError as e:
        setup_logging(args.log_level or "INFO")
        logger.bind(error_code=e.error_code, **e.details).error(e.message)
        return EXIT_ERROR
    except OSError as e:
        setup_logging(args.log_level or "INFO")
        logger.error(f"Cannot read configuration: {e}")
        return EXIT_ERROR

    setup_logging(config.log_level, config.log_file, config.log_json)
    bind_run(config.seed, config.config_hash())
    try:
        return args.handler(args, config)
    except StablePlaceError as e:
        logger.bind(error_code=e.error_code, **e.details).error(e.message)
        return EXIT_ERROR
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
