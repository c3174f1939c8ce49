"""Pass/fail gates shared by every check.

Exact comparisons use an absolute tolerance of 1e-9. Monte Carlo
comparisons accept a deviation of up to four combined standard errors.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Any, Dict

EXACT_TOLERANCE = 1e-9
GATE_SIGMAS = 4.0


@dataclass(frozen=True)
class GateResult:
    """Outcome of comparing ``value`` against ``bound``; passed iff slack >= 0."""

    value: float
    bound: float
    slack: float
    passed: bool

    @classmethod
    def upper(cls, value: float, bound: float) -> GateResult:
        """value <= bound."""
        slack = bound - value
        return cls(value=value, bound=bound, slack=slack, passed=slack >= 0)

    @classmethod
    def lower(cls, value: float, bound: float) -> GateResult:
        """value >= bound."""
        slack = value - bound
        return cls(value=value, bound=bound, slack=slack, passed=slack >= 0)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def tolerance(stderr: float, exact: bool, sigmas: float = GATE_SIGMAS) -> float:
    """Allowed absolute deviation for an estimate with the given stderr."""
    if exact:
        return EXACT_TOLERANCE
    return sigmas * stderr + EXACT_TOLERANCE


def within_gate(
    value: float,
    expected: float,
    stderr: float,
    exact: bool = False,
    sigmas: float = GATE_SIGMAS,
) -> GateResult:
    """|value - expected| within tolerance."""
    return GateResult.upper(abs(value - expected), tolerance(stderr, exact, sigmas))


def binomial_stderr(p: float, n: int) -> float:
    """Standard error of an empirical frequency over n Bernoulli(p) trials."""
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    return math.sqrt(p * (1.0 - p) / n)


def mean_stderr(total: float, total_sq: float, n: int) -> float:
    """Standard error of a sample mean from running sums."""
    if n < 2:
        return math.inf
    mean = total / n
    var = max(total_sq / n - mean * mean, 0.0) * n / (n - 1)
    return math.sqrt(var / n)
