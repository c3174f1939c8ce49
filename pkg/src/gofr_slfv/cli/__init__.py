"""Command-line front end: run, ensemble, verify and nonspatial."""

from gofr_slfv.cli.commands import (
    EXIT_CONFIG_ERROR,
    EXIT_IO_ERROR,
    EXIT_OK,
    EXIT_VERIFICATION_FAILED,
    cmd_ensemble,
    cmd_nonspatial,
    cmd_run,
    cmd_verify,
)
from gofr_slfv.cli.main import build_parser, load_config, main

__all__ = [
    "EXIT_OK",
    "EXIT_VERIFICATION_FAILED",
    "EXIT_CONFIG_ERROR",
    "EXIT_IO_ERROR",
    "cmd_run",
    "cmd_ensemble",
    "cmd_verify",
    "cmd_nonspatial",
    "build_parser",
    "load_config",
    "main",
]
