"""Statistical test helpers for gofr-slfv.

Monte Carlo assertions compare an estimate against its expected value with
a gate of four standard errors; exact assertions use 1e-9.

Usage in project tests:
    from gofr_slfv.testing import binomial_stderr, within_gate

    gate = within_gate(freq, p, binomial_stderr(p, n))
    assert gate.passed, gate

Fixtures are provided as a pytest plugin:
    pytest_plugins = ["gofr_slfv.testing.pytest_fixtures"]
"""

import csv
from pathlib import Path
from typing import Dict, List

from gofr_slfv.diagnostics.gates import (
    EXACT_TOLERANCE,
    GATE_SIGMAS,
    GateResult,
    binomial_stderr,
    mean_stderr,
    within_gate,
)


def read_csv(path: Path) -> List[Dict[str, str]]:
    """Rows of a report table as string dicts."""
    with open(path, "r", encoding="utf-8", newline="") as f:
        return list(csv.DictReader(f))


__all__ = [
    "GateResult",
    "within_gate",
    "binomial_stderr",
    "mean_stderr",
    "read_csv",
    "EXACT_TOLERANCE",
    "GATE_SIGMAS",
]
