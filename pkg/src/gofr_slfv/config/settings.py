"""Dataclass-based settings for gofr-slfv.

Process-wide knobs that are not part of a run's identity: estimator sample
counts, sampling retry caps, grid oracle memory budget, worker pool size,
default output directory and logging.

Design principles:
- Environment variable overrides with sensible defaults
- Values validated at load time (ConfigurationError on bad input)
- Run-specific values (Params, seeds, horizons) live in RunConfig, not here
"""

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional

from gofr_slfv.config.env_loader import EnvLoader
from gofr_slfv.exceptions import ConfigurationError

DEFAULT_PREFIX = "GOFR_SLFV"
DEFAULT_MC_SAMPLES = 100_000
DEFAULT_MAX_SAMPLING_RETRIES = 1_000_000
DEFAULT_GRID_CELL_BUDGET = 100_000_000

_ALLOWED_LOG_FORMATS = {"console", "json"}


def _parse_positive_int(env_data: Mapping[str, str], key: str, default: int) -> int:
    raw = env_data.get(key)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigurationError(
            f"{key} must be an integer, got {raw!r}", details={"key": key}
        ) from exc
    if value <= 0:
        raise ConfigurationError(f"{key} must be positive, got {value}", details={"key": key})
    return value


@dataclass
class LogSettings:
    """Logging configuration

    Attributes:
        level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        format: Log format (console or json)
    """

    level: str = "INFO"
    format: str = "console"

    def __post_init__(self) -> None:
        self.level = self.level.upper()
        self.format = self.format.lower()
        if self.format not in _ALLOWED_LOG_FORMATS:
            raise ConfigurationError(
                f"Invalid log format '{self.format}'. "
                f"Expected one of {sorted(_ALLOWED_LOG_FORMATS)}."
            )

    @classmethod
    def from_env(
        cls,
        prefix: str = DEFAULT_PREFIX,
        env: Optional[Mapping[str, str]] = None,
    ) -> "LogSettings":
        """Load logging settings from environment variables

        Environment variables:
            {prefix}_LOG_LEVEL: Logging level
            {prefix}_LOG_FORMAT: Log format
        """
        env_data = env if env is not None else os.environ
        return cls(
            level=env_data.get(f"{prefix}_LOG_LEVEL", "INFO"),
            format=env_data.get(f"{prefix}_LOG_FORMAT", "console"),
        )


@dataclass
class SimulationSettings:
    """Estimator, sampling and execution settings

    Attributes:
        mc_samples: Default Monte Carlo sample count per estimate
        max_sampling_retries: Retry cap for exact union sampling
        grid_cell_budget: Maximum number of cells the grid oracle may allocate
        workers: Worker processes for ensembles and verification fan-out
        output_dir: Default directory for data products
        log: Logging settings
        prefix: Environment variable prefix used
    """

    mc_samples: int = DEFAULT_MC_SAMPLES
    max_sampling_retries: int = DEFAULT_MAX_SAMPLING_RETRIES
    grid_cell_budget: int = DEFAULT_GRID_CELL_BUDGET
    workers: int = field(default_factory=lambda: os.cpu_count() or 1)
    output_dir: Path = field(default_factory=lambda: Path.cwd() / "out")
    log: LogSettings = field(default_factory=LogSettings)
    prefix: str = DEFAULT_PREFIX

    @classmethod
    def from_env(
        cls,
        prefix: str = DEFAULT_PREFIX,
        env: Optional[Mapping[str, str]] = None,
        env_file: Optional[Path] = None,
    ) -> "SimulationSettings":
        """Load settings from environment variables

        Args:
            prefix: Environment variable prefix (default: GOFR_SLFV)
            env: Explicit mapping to read instead of .env + os.environ
            env_file: Optional .env file location

        Environment variables:
            {prefix}_MC_SAMPLES: Monte Carlo samples per estimate
            {prefix}_MAX_SAMPLING_RETRIES: Union sampling retry cap
            {prefix}_GRID_CELL_BUDGET: Grid oracle cell budget
            {prefix}_WORKERS: Worker processes
            {prefix}_OUTPUT_DIR: Default output directory
            {prefix}_LOG_LEVEL / {prefix}_LOG_FORMAT: Logging
        """
        env_data = env if env is not None else EnvLoader(prefix, env_file).load()

        output_dir = env_data.get(f"{prefix}_OUTPUT_DIR")
        return cls(
            mc_samples=_parse_positive_int(env_data, f"{prefix}_MC_SAMPLES", DEFAULT_MC_SAMPLES),
            max_sampling_retries=_parse_positive_int(
                env_data, f"{prefix}_MAX_SAMPLING_RETRIES", DEFAULT_MAX_SAMPLING_RETRIES
            ),
            grid_cell_budget=_parse_positive_int(
                env_data, f"{prefix}_GRID_CELL_BUDGET", DEFAULT_GRID_CELL_BUDGET
            ),
            workers=_parse_positive_int(env_data, f"{prefix}_WORKERS", os.cpu_count() or 1),
            output_dir=Path(output_dir) if output_dir else Path.cwd() / "out",
            log=LogSettings.from_env(prefix, env=env_data),
            prefix=prefix,
        )


# Global settings storage per prefix
_global_settings: dict[str, SimulationSettings] = {}


def get_settings(
    prefix: str = DEFAULT_PREFIX,
    reload: bool = False,
    env_file: Optional[Path] = None,
) -> SimulationSettings:
    """Get or create the settings instance for a given prefix

    Args:
        prefix: Environment variable prefix
        reload: If True, reload settings from environment
        env_file: Optional .env file location
    """
    if prefix not in _global_settings or reload:
        _global_settings[prefix] = SimulationSettings.from_env(prefix=prefix, env_file=env_file)
    return _global_settings[prefix]


def reset_settings(prefix: Optional[str] = None) -> None:
    """Reset settings (primarily for testing)

    Args:
        prefix: Specific prefix to reset, or None to reset all
    """
    if prefix:
        _global_settings.pop(prefix, None)
    else:
        _global_settings.clear()
