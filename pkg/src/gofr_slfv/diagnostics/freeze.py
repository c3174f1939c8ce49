"""Freezing proxies for finite runs.

Whether eps_n = 0 holds forever cannot be decided from a finite run. A
report gives the last positive index, tau_alpha censored at the horizon and
the largest frequency left in the cluster; stability under doubling the
horizon is the acceptance signal.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional, Sequence

import numpy as np

from gofr_slfv.chain import ChainState, Params, Trajectory, evaluate_frequency, evaluate_many
from gofr_slfv.chain import extend_run, run
from gofr_slfv.exceptions import ValidationError
from gofr_slfv.geometry import EstimatorMethod, sample_uniform_many, union_volume
from gofr_slfv.geometry.sampling import DEFAULT_MAX_RETRIES
from gofr_slfv.logger import get_logger

from .bounds import AlphaConfig
from .fields import EstimatorTag, estimator_stream, exact_field
from .mass import identity_increments, tau_from_increments

logger = get_logger("gofr-slfv.diagnostics")

DEFAULT_SUP_POINTS = 10_000
DECAY_TOLERANCE = 1e-12
_RELATIVE_FLOOR = 1e-280


@dataclass(frozen=True)
class FreezeReport:
    """Empirical freezing summary of one run up to ``n_steps``."""

    seed: int
    n_steps: int
    kappa_hat: int
    tau_alpha_hat: int
    sup_freq: float
    final_cluster_volume: float
    final_cluster_volume_stderr: float = 0.0
    censored: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def sup_frequency(
    state: ChainState,
    method: EstimatorMethod,
    n_sup_points: int = DEFAULT_SUP_POINTS,
    rng: Optional[np.random.Generator] = None,
) -> float:
    """Largest frequency over the cluster: exact in d = 1, over query points otherwise."""
    if method.is_exact:
        return max(exact_field(state).values, default=0.0)
    params = state.params
    stream = estimator_stream(state, EstimatorTag.QUERIES, rng)
    queries = [sample_uniform_many(state.cluster, stream, n_sup_points)]
    queries.append(np.asarray([p.center for p in params.patches], dtype=np.float64))
    centers = [e.center for e in state.events if e.positive]
    if centers:
        queries.append(np.asarray(centers, dtype=np.float64))
    return float(evaluate_many(state, np.concatenate(queries, axis=0)).max())


def freeze_report(
    trajectory: Trajectory,
    horizon: Optional[int] = None,
    cfg: Optional[AlphaConfig] = None,
    method: Optional[EstimatorMethod] = None,
    n_sup_points: int = DEFAULT_SUP_POINTS,
) -> FreezeReport:
    """Report on the run truncated at ``horizon`` (its full length by default)."""
    params = trajectory.params
    horizon = trajectory.n_steps if horizon is None else horizon
    if not 0 <= horizon <= trajectory.n_steps:
        raise ValidationError(
            f"horizon {horizon} outside 0..{trajectory.n_steps}",
            details={"n_steps": trajectory.n_steps},
        )
    cfg = cfg or AlphaConfig.from_params(params)
    method = method or EstimatorMethod.for_dimension(params.dim)
    state = trajectory.snapshot(horizon)
    stream = None if method.is_exact else estimator_stream(state, EstimatorTag.GROWTH)
    volume = union_volume(state.cluster, method, stream)
    increments = identity_increments(trajectory, method, horizon)
    return FreezeReport(
        seed=params.seed,
        n_steps=horizon,
        kappa_hat=trajectory.kappa_hat(horizon),
        tau_alpha_hat=tau_from_increments(increments, cfg.alpha),
        sup_freq=sup_frequency(state, method, n_sup_points),
        final_cluster_volume=volume.value,
        final_cluster_volume_stderr=volume.stderr,
    )


@dataclass(frozen=True)
class HorizonStability:
    at_horizon: FreezeReport
    at_double: FreezeReport
    trajectory: Optional[Trajectory] = field(default=None, repr=False, compare=False)

    @property
    def stable(self) -> bool:
        """kappa_hat and tau_alpha_hat both unchanged by doubling the horizon."""
        a, b = self.at_horizon, self.at_double
        return a.kappa_hat == b.kappa_hat and a.tau_alpha_hat == b.tau_alpha_hat


def horizon_stability(
    params: Params,
    horizon: int,
    cfg: Optional[AlphaConfig] = None,
    method: Optional[EstimatorMethod] = None,
    max_retries: int = DEFAULT_MAX_RETRIES,
    n_sup_points: int = DEFAULT_SUP_POINTS,
    trajectory: Optional[Trajectory] = None,
) -> HorizonStability:
    """Reports at H and 2H from a single run to 2H."""
    if trajectory is None or trajectory.n_steps < 2 * horizon:
        trajectory = run(params, 2 * horizon, max_retries=max_retries)
    return HorizonStability(
        at_horizon=freeze_report(trajectory, horizon, cfg, method, n_sup_points),
        at_double=freeze_report(trajectory, 2 * horizon, cfg, method, n_sup_points),
        trajectory=trajectory,
    )


def stable_horizon(
    params: Params,
    horizon: int,
    max_doublings: int,
    cfg: Optional[AlphaConfig] = None,
    method: Optional[EstimatorMethod] = None,
    max_retries: int = DEFAULT_MAX_RETRIES,
    n_sup_points: int = DEFAULT_SUP_POINTS,
) -> HorizonStability:
    """Double the horizon until the report is stable or ``max_doublings`` is spent.

    One run to 2H is extended in place at each doubling; the returned
    result carries it.
    """
    trajectory = run(params, 2 * horizon, max_retries=max_retries)
    result = horizon_stability(
        params, horizon, cfg, method, max_retries, n_sup_points, trajectory=trajectory
    )
    for _ in range(max_doublings):
        if result.stable:
            break
        horizon *= 2
        logger.debug("Horizon not stable, doubling", seed=params.seed, horizon=horizon)
        trajectory = extend_run(trajectory, 2 * horizon - trajectory.n_steps, max_retries)
        result = horizon_stability(
            params, horizon, cfg, method, max_retries, n_sup_points, trajectory=trajectory
        )
    return result


def decay_check(trajectory: Trajectory, x: Sequence[float], horizon: Optional[int] = None) -> float:
    """Relative residual of Y_n(x) = Y_k(x) (1-U)^m past k = kappa_hat.

    m counts the events after k whose ball contains x; all of them are
    negative by the definition of kappa_hat.
    """
    n = trajectory.n_steps if horizon is None else horizon
    kappa = trajectory.kappa_hat(n)
    frozen = trajectory.snapshot(kappa)
    later = trajectory.snapshot(n)
    hits = sum(1 for e in later.covering_events(x) if e.index > kappa)
    expected = evaluate_frequency(frozen, x) * (1.0 - trajectory.params.impact) ** hits
    actual = evaluate_frequency(later, x)
    if expected < _RELATIVE_FLOOR:
        # near or below the subnormal range only the absolute gap is meaningful
        return abs(actual - expected)
    return abs(actual - expected) / expected
