"""Writers for the freeze, ensemble, verification and non-spatial reports.

Every file carries ``schema_version``: a top-level key in JSON documents and
the first column of CSV tables.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence

import numpy as np
from scipy import stats

from gofr_slfv.diagnostics import (
    DEFAULT_FLIP_CUTOFF,
    FreezeReport,
    HorizonStability,
    NonspatialEnsemble,
    VerificationReport,
)
from gofr_slfv.exceptions import RecordError
from gofr_slfv.logger import get_logger

from .trajectory import SCHEMA_VERSION

logger = get_logger("gofr-slfv.records")

SUMMARY_COLUMNS = (
    "schema_version",
    "seed",
    "kappa_hat",
    "kappa_hat_2h",
    "stable",
    "final_cluster_volume",
    "sup_freq",
    "tau_alpha_hat",
)
VERIFY_COLUMNS = (
    "schema_version",
    "trajectory",
    "step",
    "check",
    "value",
    "bound",
    "slack",
    "passed",
)
NONSPATIAL_COLUMNS = ("schema_version", "seed", "terminal", "last_flip")


def write_json(path: Path, payload: Mapping[str, Any]) -> None:
    """Write ``payload`` with ``schema_version`` prepended."""
    path = Path(path)
    document = {"schema_version": SCHEMA_VERSION, **payload}
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(document, f, indent=2, allow_nan=True)
            f.write("\n")
    except (OSError, TypeError, ValueError) as e:
        logger.error("Failed to write report", path=str(path), error=str(e))
        raise RecordError(f"Failed to write {path.name}: {e}", details={"path": str(path)}) from e


def write_csv(path: Path, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> int:
    path = Path(path)
    count = 0
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow(row)
                count += 1
    except OSError as e:
        logger.error("Failed to write table", path=str(path), error=str(e))
        raise RecordError(f"Failed to write {path.name}: {e}", details={"path": str(path)}) from e
    return count


def write_freeze_report(
    path: Path,
    report: FreezeReport,
    stability: Optional[HorizonStability] = None,
    params: Optional[Mapping[str, Any]] = None,
) -> None:
    payload: Dict[str, Any] = {"report": report.to_dict()}
    if stability is not None:
        payload["at_double"] = stability.at_double.to_dict()
        payload["stable"] = stability.stable
    if params is not None:
        payload["params"] = dict(params)
    write_json(path, payload)


@dataclass(frozen=True)
class SummaryRow:
    """One ensemble member: the report at H and kappa_hat at 2H."""

    seed: int
    kappa_hat: int
    kappa_hat_2h: int
    stable: bool
    final_cluster_volume: float
    sup_freq: float
    tau_alpha_hat: int

    @classmethod
    def from_stability(cls, stability: HorizonStability) -> SummaryRow:
        at_h = stability.at_horizon
        return cls(
            seed=at_h.seed,
            kappa_hat=at_h.kappa_hat,
            kappa_hat_2h=stability.at_double.kappa_hat,
            stable=stability.stable,
            final_cluster_volume=at_h.final_cluster_volume,
            sup_freq=at_h.sup_freq,
            tau_alpha_hat=at_h.tau_alpha_hat,
        )

    def as_row(self) -> List[Any]:
        return [
            SCHEMA_VERSION,
            self.seed,
            self.kappa_hat,
            self.kappa_hat_2h,
            int(self.stable),
            repr(self.final_cluster_volume),
            repr(self.sup_freq),
            self.tau_alpha_hat,
        ]


def write_summary_csv(path: Path, rows: Iterable[SummaryRow]) -> int:
    """summary.csv, rows in seed order."""
    ordered = sorted(rows, key=lambda r: r.seed)
    return write_csv(path, SUMMARY_COLUMNS, (r.as_row() for r in ordered))


def ensemble_statistics(rows: Sequence[SummaryRow]) -> Dict[str, Any]:
    """Distribution of kappa_hat, stability fraction, cluster volume and sup frequency."""
    if not rows:
        return {"n_runs": 0}
    kappa = np.array([r.kappa_hat for r in rows], dtype=np.int64)
    volume = np.array([r.final_cluster_volume for r in rows], dtype=np.float64)
    sup = np.array([r.sup_freq for r in rows], dtype=np.float64)
    values, counts = np.unique(kappa, return_counts=True)
    return {
        "n_runs": len(rows),
        "stable_fraction": float(np.mean([r.stable for r in rows])),
        "kappa_hat": {
            "histogram": {str(int(v)): int(c) for v, c in zip(values, counts)},
            "quantiles": {
                str(q): float(np.quantile(kappa, q)) for q in (0.05, 0.25, 0.5, 0.75, 0.95)
            },
            "max": int(kappa.max()),
        },
        "final_cluster_volume": {
            "mean": float(volume.mean()),
            "stderr": float(stats.sem(volume)) if len(rows) > 1 else math.inf,
            "min": float(volume.min()),
            "max": float(volume.max()),
        },
        "sup_freq": {"mean": float(sup.mean()), "max": float(sup.max())},
    }


def write_verification(out_dir: Path, report: VerificationReport) -> None:
    """verify.csv with one row per check and verify.json with the per-check summary."""
    out_dir = Path(out_dir)
    rows = (
        [
            SCHEMA_VERSION,
            r.trajectory,
            r.step,
            r.check,
            repr(r.value),
            repr(r.bound),
            repr(r.slack),
            int(r.passed),
        ]
        for r in report.rows
    )
    write_csv(out_dir / "verify.csv", VERIFY_COLUMNS, rows)
    write_json(
        out_dir / "verify.json",
        {
            "passed": report.passed,
            "rows": len(report.rows),
            "failures": len(report.failures),
            "checks": report.summary(),
        },
    )


def write_nonspatial(
    out_dir: Path, ensemble: NonspatialEnsemble, cutoff: int = DEFAULT_FLIP_CUTOFF
) -> None:
    """nonspatial.csv with one row per seed and nonspatial.json with the ensemble summary."""
    out_dir = Path(out_dir)
    rows = (
        [SCHEMA_VERSION, seed, repr(float(z)), int(flip)]
        for seed, z, flip in zip(ensemble.seeds, ensemble.terminals, ensemble.last_flips)
    )
    write_csv(out_dir / "nonspatial.csv", NONSPATIAL_COLUMNS, rows)
    write_json(out_dir / "nonspatial.json", ensemble.to_dict(cutoff))
