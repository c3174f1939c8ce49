"""Data products: JSON Lines event logs and CSV/JSON reports."""

from gofr_slfv.records.reports import (
    NONSPATIAL_COLUMNS,
    SUMMARY_COLUMNS,
    VERIFY_COLUMNS,
    SummaryRow,
    ensemble_statistics,
    write_csv,
    write_freeze_report,
    write_json,
    write_nonspatial,
    write_summary_csv,
    write_verification,
)
from gofr_slfv.records.trajectory import (
    SCHEMA_VERSION,
    read_trajectory,
    write_events,
    write_trajectory,
)

__all__ = [
    "SCHEMA_VERSION",
    "write_events",
    "write_trajectory",
    "read_trajectory",
    "write_json",
    "write_csv",
    "write_freeze_report",
    "SummaryRow",
    "SUMMARY_COLUMNS",
    "write_summary_csv",
    "ensemble_statistics",
    "VERIFY_COLUMNS",
    "write_verification",
    "NONSPATIAL_COLUMNS",
    "write_nonspatial",
]
