"""gofr-slfv - discrete-time SLFV voter model simulator and verification harness.

Packages:
- geometry: balls, ball unions, exact union sampling, volumes with standard errors
- chain: the chain (Y_n, Delta_n), its clock, the non-spatial chain, the coupling
- oracle: exact piecewise fields in d=1 and a dense grid reference in d>=2
- diagnostics: mass, local average, drift, forbidden region, freezing proxies
- records: JSON Lines event logs and CSV/JSON reports
- cli: run, ensemble, verify and nonspatial subcommands
- config, logger, exceptions: settings, structured logging, error hierarchy
"""

__version__ = "1.0.0"

from gofr_slfv.chain import (
    ChainState,
    Event,
    InitialPatch,
    Params,
    Trajectory,
    evaluate_frequency,
    replay,
    run,
    step,
)
from gofr_slfv.config import LogSettings, SimulationSettings, get_settings, reset_settings
from gofr_slfv.diagnostics import (
    AlphaConfig,
    FreezeReport,
    VerificationReport,
    VerificationSuite,
    freeze_report,
)
from gofr_slfv.exceptions import (
    ConfigurationError,
    RecordError,
    SamplingError,
    SlfvError,
    ValidationError,
)
from gofr_slfv.geometry import Ball, BallUnion, Estimate, EstimatorMethod
from gofr_slfv.logger import Logger, StructuredLogger, create_logger, get_logger

__all__ = [
    "__version__",
    # Logger
    "Logger",
    "StructuredLogger",
    "get_logger",
    "create_logger",
    # Config
    "SimulationSettings",
    "LogSettings",
    "get_settings",
    "reset_settings",
    # Exceptions
    "SlfvError",
    "ValidationError",
    "ConfigurationError",
    "SamplingError",
    "RecordError",
    # Geometry
    "Ball",
    "BallUnion",
    "Estimate",
    "EstimatorMethod",
    # Chain
    "Params",
    "InitialPatch",
    "Event",
    "ChainState",
    "Trajectory",
    "evaluate_frequency",
    "step",
    "run",
    "replay",
    # Diagnostics
    "AlphaConfig",
    "FreezeReport",
    "freeze_report",
    "VerificationSuite",
    "VerificationReport",
]
