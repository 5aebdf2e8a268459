# pcenters/cli/main.py

import argparse
import logging
from typing import List, Optional

from pcenters.cli.config import EXPERIMENT_ALIASES, ExperimentConfig
from pcenters.cli.runner import EXIT_INVALID, run
from pcenters.errors import ValidationError
from pcenters.logging_setup import setup_logging

log = logging.getLogger("pc")


def build_parser() -> argparse.ArgumentParser:
    names = ", ".join(EXPERIMENT_ALIASES)
    parser = argparse.ArgumentParser(
        prog="pc",
        description="Potentials of bodies, their centers, and the bounds that locate them.",
        epilog=f"experiments: {names}",
    )
    parser.add_argument("experiment", nargs="+", help="experiment name, e.g. 'centers find' or 'conebound'")
    parser.add_argument("--config", required=True, help="JSON experiment config (comments allowed)")
    parser.add_argument("--out", default="out", help="output directory (default: out)")
    parser.add_argument("--svg", action="store_true", help="also write an SVG picture (planar bodies only)")
    parser.add_argument("--log-level", default=None, help="override PC_LOG_LEVEL")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level.upper() if args.log_level else None)
    try:
        config = ExperimentConfig.from_file(args.config, " ".join(args.experiment))
    except FileNotFoundError:
        log.error("[cli] config file not found: %s", args.config)
        return EXIT_INVALID
    except (ValidationError, ValueError) as e:
        # ValueError: the JSON itself did not parse
        log.error("[cli] invalid config: %s", e)
        return EXIT_INVALID
    return run(config, args.out, args.svg)
