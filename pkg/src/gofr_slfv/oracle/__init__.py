"""Reference implementations used to validate the kernel and the estimators.

PiecewiseField1D is exact in d = 1; GridField is a dense Riemann-sum
reference for d >= 2.
"""

from gofr_slfv.oracle.grid import GridField, grid_replay
from gofr_slfv.oracle.piecewise import (
    MERGE_TOLERANCE,
    PiecewiseField1D,
    apply_event_1d,
    exact_drift_1d,
    exact_mass_1d,
    exact_phi_1d,
    initial_field_1d,
    level_set_intervals_1d,
    level_set_length_1d,
    merge_sorted,
    phi_knots,
    replay_1d,
    sup_phi_1d,
)

__all__ = [
    "PiecewiseField1D",
    "MERGE_TOLERANCE",
    "apply_event_1d",
    "initial_field_1d",
    "replay_1d",
    "exact_mass_1d",
    "exact_phi_1d",
    "exact_drift_1d",
    "phi_knots",
    "sup_phi_1d",
    "level_set_intervals_1d",
    "level_set_length_1d",
    "merge_sorted",
    "GridField",
    "grid_replay",
]
