"""Estimate values and estimator method selection.

Every measured quantity in the package (volumes, masses, local averages,
drifts) is returned as an Estimate so that exact d=1 results and Monte Carlo
results flow through the same comparison gates.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Any, Dict

from gofr_slfv.exceptions import EstimatorError

EXACT_1D = "exact-1d"
MONTE_CARLO = "monte-carlo"

_METHOD_PATTERN = re.compile(r"^\s*monte-carlo\s*(?:\(\s*(\d+)\s*\))?\s*$")


@dataclass(frozen=True)
class Estimate:
    """A measured value with its standard error.

    Attributes:
        value: Point estimate
        stderr: Sample standard error (0 for exact computations)
        exact: True when the value comes from closed-form arithmetic
    """

    value: float
    stderr: float = 0.0
    exact: bool = False

    @classmethod
    def exact_value(cls, value: float) -> Estimate:
        return cls(value=float(value), stderr=0.0, exact=True)

    def combined_stderr(self, other: Estimate) -> float:
        """Standard error of a difference of independent estimates."""
        return math.hypot(self.stderr, other.stderr)

    def to_dict(self) -> Dict[str, Any]:
        return {"value": self.value, "stderr": self.stderr, "exact": self.exact}


@dataclass(frozen=True)
class EstimatorMethod:
    """How an integral or volume is evaluated.

    Attributes:
        kind: "exact-1d" (interval arithmetic, d=1 only) or "monte-carlo"
        n_samples: Sample count for Monte Carlo estimates
    """

    kind: str
    n_samples: int = 100_000

    def __post_init__(self) -> None:
        if self.kind not in (EXACT_1D, MONTE_CARLO):
            raise EstimatorError(f"Unknown estimator method '{self.kind}'")
        if self.kind == MONTE_CARLO and self.n_samples < 2:
            raise EstimatorError(
                "Monte Carlo estimates need at least 2 samples",
                details={"n_samples": self.n_samples},
            )

    @classmethod
    def exact_1d(cls) -> EstimatorMethod:
        return cls(EXACT_1D, 0)

    @classmethod
    def monte_carlo(cls, n_samples: int = 100_000) -> EstimatorMethod:
        return cls(MONTE_CARLO, n_samples)

    @classmethod
    def for_dimension(cls, dim: int, n_samples: int = 100_000) -> EstimatorMethod:
        """Exact interval arithmetic in d=1, Monte Carlo otherwise."""
        return cls.exact_1d() if dim == 1 else cls.monte_carlo(n_samples)

    @classmethod
    def parse(cls, text: str, default_samples: int = 100_000) -> EstimatorMethod:
        """Parse "exact-1d", "monte-carlo" or "monte-carlo(N)"."""
        if text.strip() == EXACT_1D:
            return cls.exact_1d()
        match = _METHOD_PATTERN.match(text)
        if match is None:
            raise EstimatorError(f"Cannot parse estimator method '{text}'")
        samples = int(match.group(1)) if match.group(1) else default_samples
        return cls.monte_carlo(samples)

    @property
    def is_exact(self) -> bool:
        return self.kind == EXACT_1D

    def require_dimension(self, dim: int) -> None:
        """Reject exact-1d requests outside d=1."""
        if self.is_exact and dim != 1:
            raise EstimatorError(
                "exact-1d estimation is only available in dimension 1",
                code="EXACT_METHOD_DIMENSION",
                details={"dim": dim},
            )

    def __str__(self) -> str:
        return EXACT_1D if self.is_exact else f"{MONTE_CARLO}({self.n_samples})"
