"""gofr-slfv command line.

Usage:
    gofr-slfv run --config run.json --seed 7 --steps 5000 --out out/
    gofr-slfv ensemble --seeds 0..499 --steps 5000 --out out/ensemble
    gofr-slfv verify --dim 1 --seeds 0..19 --steps 2000 --out out/verify
    gofr-slfv nonspatial --impact 0.5 --z0 0.3 --seeds 0..9999 --steps 100

Exit codes:
    0  success
    1  verification failure (reports are still written)
    2  invalid configuration
    3  I/O failure

Progress goes to stderr through the logger; data goes to files only.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from pydantic import ValidationError as PydanticValidationError

from gofr_slfv.config import SimulationSettings, get_settings
from gofr_slfv.config.run_config import RunConfig
from gofr_slfv.exceptions import ConfigurationError, RecordError, SlfvError, ValidationError
from gofr_slfv.logger import configure_logging, get_logger

from .commands import (
    EXIT_CONFIG_ERROR,
    EXIT_IO_ERROR,
    EXIT_VERIFICATION_FAILED,
    cmd_ensemble,
    cmd_nonspatial,
    cmd_run,
    cmd_verify,
)

logger = get_logger("gofr-slfv.cli")

Command = Callable[[RunConfig, Optional[SimulationSettings]], int]

COMMANDS: Dict[str, Command] = {
    "run": cmd_run,
    "ensemble": cmd_ensemble,
    "verify": cmd_verify,
    "nonspatial": cmd_nonspatial,
}


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON run configuration")
    seeds = common.add_mutually_exclusive_group()
    seeds.add_argument("--seed", type=int, help="Single seed N")
    seeds.add_argument("--seeds", help="Inclusive seed range A..B")
    common.add_argument("--steps", type=int, help="Number of steps (horizon H)")
    common.add_argument("--out", type=Path, help="Output directory")
    common.add_argument("--dim", type=int, help="Space dimension d")
    common.add_argument("--radius", type=float, help="Event radius R")
    common.add_argument("--impact", type=float, help="Impact fraction U in (0, 1)")
    common.add_argument("--alpha", type=float, help="Mass-increment threshold")
    common.add_argument("--mc-samples", type=int, help="Monte Carlo samples per estimate")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gofr-slfv",
        description="Simulate and verify the discrete-time SLFV voter model",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="Exit codes: 0 ok, 1 verification failure, 2 config error, 3 I/O error",
    )
    common = _common_flags()
    subparsers = parser.add_subparsers(dest="command", help="Command")
    subparsers.add_parser(
        "run", parents=[common], help="One trajectory: events.jsonl and freeze.json"
    )
    subparsers.add_parser(
        "ensemble", parents=[common], help="Seed-range ensemble: summary.csv and per-seed logs"
    )
    subparsers.add_parser(
        "verify", parents=[common], help="Invariant suite: verify.csv and verify.json"
    )
    nonspatial = subparsers.add_parser(
        "nonspatial", parents=[common], help="Non-spatial voter chains: nonspatial.csv/json"
    )
    nonspatial.add_argument("--z0", type=float, help="Initial frequency in [0, 1]")
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    """The --config document (defaults when absent) with the flags applied."""
    config = RunConfig.load(args.config) if args.config else RunConfig()
    seeds = args.seed if args.seed is not None else args.seeds
    steps = args.steps
    if args.command == "nonspatial":
        block = config.nonspatial.model_dump()
        if steps is not None:
            block["steps"] = steps
        if getattr(args, "z0", None) is not None:
            block["z0"] = args.z0
        data = config.model_dump()
        data["nonspatial"] = block
        config = RunConfig.from_dict(data)
        steps = None
    return config.with_overrides(
        seeds=seeds,
        n_steps=steps,
        out_dir=args.out,
        dim=args.dim,
        radius=args.radius,
        impact=args.impact,
        alpha=args.alpha,
        mc_samples=args.mc_samples,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_CONFIG_ERROR

    try:
        settings = get_settings()
        configure_logging(settings.log.level, settings.log.format)
        config = load_config(args)
        return COMMANDS[args.command](config, settings)
    except (ConfigurationError, ValidationError, PydanticValidationError) as e:
        logger.error("Invalid configuration", command=args.command, error=str(e))
        return EXIT_CONFIG_ERROR
    except (RecordError, OSError) as e:
        logger.error("I/O failure", command=args.command, error=str(e))
        return EXIT_IO_ERROR
    except SlfvError as e:
        # sampling retry cap and estimator failures abort the run as a failed diagnostic
        logger.error("Run aborted", command=args.command, error=str(e), code=e.code)
        return EXIT_VERIFICATION_FAILED


if __name__ == "__main__":
    sys.exit(main())
