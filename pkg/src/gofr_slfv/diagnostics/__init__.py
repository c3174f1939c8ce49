"""Estimators and invariant checks on top of the chain.

Every quantity has an exact d = 1 path through the piecewise oracle and a
Monte Carlo path with a standard error for any dimension.
"""

from gofr_slfv.diagnostics.bounds import (
    AlphaConfig,
    default_alpha,
    growth_bound_check,
    product_bound,
    product_factors,
    psi_threshold,
)
from gofr_slfv.diagnostics.fields import (
    EstimatorTag,
    estimator_stream,
    exact_field,
    lipschitz_check,
    local_average,
    martingale_drift,
    sup_local_average,
    total_mass,
)
from gofr_slfv.diagnostics.forbidden import (
    ForbiddenRegionStats,
    center_in_forbidden,
    forbidden_region_stats,
    forbidden_region_volume,
    in_forbidden_band,
)
from gofr_slfv.diagnostics.freeze import (
    DECAY_TOLERANCE,
    FreezeReport,
    HorizonStability,
    decay_check,
    freeze_report,
    horizon_stability,
    stable_horizon,
    sup_frequency,
)
from gofr_slfv.diagnostics.gates import (
    EXACT_TOLERANCE,
    GATE_SIGMAS,
    GateResult,
    binomial_stderr,
    mean_stderr,
    tolerance,
    within_gate,
)
from gofr_slfv.diagnostics.mass import (
    ConstraintResult,
    MassSeries,
    constraint_check,
    identity_increments,
    mass_change_check,
    mass_increment,
    mass_series,
    tau_alpha_estimate,
    tau_from_increments,
)
from gofr_slfv.diagnostics.nonspatial import (
    DEFAULT_FLIP_CUTOFF,
    NonspatialEnsemble,
    nonspatial_ensemble,
    one_step_gate,
)
from gofr_slfv.diagnostics.suite import CheckRow, VerificationReport, VerificationSuite

__all__ = [
    "AlphaConfig",
    "default_alpha",
    "psi_threshold",
    "product_factors",
    "product_bound",
    "growth_bound_check",
    "EstimatorTag",
    "estimator_stream",
    "exact_field",
    "total_mass",
    "local_average",
    "martingale_drift",
    "sup_local_average",
    "lipschitz_check",
    "ForbiddenRegionStats",
    "forbidden_region_volume",
    "forbidden_region_stats",
    "center_in_forbidden",
    "in_forbidden_band",
    "FreezeReport",
    "HorizonStability",
    "DECAY_TOLERANCE",
    "freeze_report",
    "horizon_stability",
    "stable_horizon",
    "sup_frequency",
    "decay_check",
    "GateResult",
    "EXACT_TOLERANCE",
    "GATE_SIGMAS",
    "tolerance",
    "within_gate",
    "binomial_stderr",
    "mean_stderr",
    "MassSeries",
    "ConstraintResult",
    "mass_series",
    "mass_increment",
    "mass_change_check",
    "identity_increments",
    "tau_from_increments",
    "tau_alpha_estimate",
    "constraint_check",
    "NonspatialEnsemble",
    "DEFAULT_FLIP_CUTOFF",
    "nonspatial_ensemble",
    "one_step_gate",
    "CheckRow",
    "VerificationReport",
    "VerificationSuite",
]
