"""Base exception classes for gofr-slfv.

All simulator exceptions include structured error information:
- code: Machine-readable error identifier
- message: Human-readable error description
- details: Additional context (parameter values, step index, estimator error, ...)
"""

from typing import Any, Dict, Optional


class SlfvError(Exception):
    """Base exception for all simulator errors.

    Attributes:
        code: Machine-readable error code (e.g., "INVALID_IMPACT")
        message: Human-readable error message
        details: Optional additional context for debugging
    """

    default_code = "SLFV_ERROR"

    def __init__(
        self,
        message: str,
        code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        """Initialize error with structured information.

        Args:
            message: Human-readable error message
            code: Machine-readable error code (defaults to the class default_code)
            details: Optional additional context
        """
        self.code = code or self.default_code
        self.message = message
        self.details = details or {}
        super().__init__(message)

    def __str__(self) -> str:
        if self.details:
            return f"{self.code}: {self.message} (details: {self.details})"
        return f"{self.code}: {self.message}"

    def to_dict(self) -> Dict[str, Any]:
        """Convert exception to dictionary for JSON reports."""
        return {
            "code": self.code,
            "message": self.message,
            "details": self.details,
        }


class ValidationError(SlfvError):
    """Input values violate a type invariant (radius, impact, frequency, dimension)."""

    default_code = "VALIDATION_ERROR"


class GeometryError(ValidationError):
    """Invalid geometric input: dimension mismatch, empty union, bad radius."""

    default_code = "GEOMETRY_ERROR"


class ConfigurationError(SlfvError):
    """Run configuration or environment settings are invalid."""

    default_code = "CONFIGURATION_ERROR"


class SamplingError(SlfvError):
    """Exact union sampling exceeded its retry cap."""

    default_code = "SAMPLING_RETRIES_EXCEEDED"


class EstimatorError(SlfvError):
    """An estimator was asked for something it cannot deliver.

    Raised for exact-1d requests in d != 1 and for Monte Carlo error bars that are
    too wide for the comparison being made.
    """

    default_code = "ESTIMATOR_ERROR"


class HorizonError(SlfvError):
    """A time query falls outside the computed jump schedule."""

    default_code = "BEYOND_HORIZON"


class CouplingError(SlfvError):
    """Coupled chains do not satisfy the domination precondition."""

    default_code = "COUPLING_PRECONDITION"


class OracleBudgetError(SlfvError):
    """The grid oracle would exceed its configured cell budget."""

    default_code = "GRID_BUDGET_EXCEEDED"


class RecordError(SlfvError):
    """Trajectory or report files could not be written, read or decoded."""

    default_code = "RECORD_ERROR"
