"""Exceptions for gofr-slfv.

All exceptions carry structured error information:
- code: Machine-readable error identifier
- message: Human-readable error description
- details: Additional context for debugging

Usage:
    from gofr_slfv.exceptions import SlfvError, ValidationError, SamplingError
"""

from gofr_slfv.exceptions.base import (
    ConfigurationError,
    CouplingError,
    EstimatorError,
    GeometryError,
    HorizonError,
    OracleBudgetError,
    RecordError,
    SamplingError,
    SlfvError,
    ValidationError,
)

__all__ = [
    "SlfvError",
    "ValidationError",
    "GeometryError",
    "ConfigurationError",
    "SamplingError",
    "EstimatorError",
    "HorizonError",
    "CouplingError",
    "OracleBudgetError",
    "RecordError",
]
