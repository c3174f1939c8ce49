"""Configuration for gofr-slfv.

Process-wide settings come from the environment (``GOFR_SLFV_*``, optionally
a .env file). Per-run configuration lives in
:mod:`gofr_slfv.config.run_config`, imported separately because it depends
on the chain and diagnostics packages.

Example:
    from gofr_slfv.config import get_settings

    settings = get_settings()
    settings.mc_samples
"""

from gofr_slfv.config.env_loader import EnvLoader
from gofr_slfv.config.settings import (
    DEFAULT_GRID_CELL_BUDGET,
    DEFAULT_MAX_SAMPLING_RETRIES,
    DEFAULT_MC_SAMPLES,
    DEFAULT_PREFIX,
    LogSettings,
    SimulationSettings,
    get_settings,
    reset_settings,
)

__all__ = [
    "EnvLoader",
    "LogSettings",
    "SimulationSettings",
    "get_settings",
    "reset_settings",
    "DEFAULT_PREFIX",
    "DEFAULT_MC_SAMPLES",
    "DEFAULT_MAX_SAMPLING_RETRIES",
    "DEFAULT_GRID_CELL_BUDGET",
]
