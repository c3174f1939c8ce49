"""Total mass along a run: series, increments, tau_alpha and the constraint dichotomy."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence

import numpy as np

from gofr_slfv.chain import ChainState, Event, Trajectory, evaluate_many
from gofr_slfv.exceptions import EstimatorError, ValidationError
from gofr_slfv.geometry import Ball, Estimate, EstimatorMethod, sample_in_ball
from gofr_slfv.oracle import apply_event_1d, exact_mass_1d

from .bounds import AlphaConfig
from .fields import EstimatorTag, estimator_stream, exact_field, local_average, total_mass
from .gates import GATE_SIGMAS

# Phi must be estimated with a stderr below this fraction of alpha / U
# before the constraint dichotomy is decided.
MAX_RELATIVE_STDERR = 0.1


@dataclass
class MassSeries:
    """M_0..M_H with standard errors; ``increments[n]`` = M_{n+1} - M_n."""

    method: str
    masses: List[Estimate] = field(default_factory=list)

    @property
    def horizon(self) -> int:
        return len(self.masses) - 1

    @property
    def values(self) -> List[float]:
        return [m.value for m in self.masses]

    @property
    def increments(self) -> List[float]:
        v = self.values
        return [b - a for a, b in zip(v, v[1:])]

    @property
    def increment_stderr(self) -> List[float]:
        return [a.combined_stderr(b) for a, b in zip(self.masses, self.masses[1:])]


def mass_series(
    trajectory: Trajectory,
    method: EstimatorMethod,
    horizon: Optional[int] = None,
) -> MassSeries:
    """M_n for n = 0..horizon (the whole run by default)."""
    series = MassSeries(method=str(method))
    for state in trajectory.states(horizon):
        series.masses.append(total_mass(state, method))
    return series


def mass_increment(
    pre_state: ChainState,
    post_state: ChainState,
    method: EstimatorMethod,
    rng: Optional[np.random.Generator] = None,
) -> Estimate:
    """M_{n+1} - M_n measured from the two fields, not from the identity.

    Monte Carlo integrates Y_{n+1} - Y_n over the last event ball, outside
    of which the two fields agree.
    """
    if post_state.step != pre_state.step + 1:
        raise ValidationError("post_state must be one step after pre_state")
    params = pre_state.params
    event = post_state.event(post_state.step)
    method.require_dimension(params.dim)
    if method.is_exact:
        before = exact_field(pre_state)
        after = apply_event_1d(
            before, event.center[0], params.radius, params.impact, event.positive
        )
        return Estimate.exact_value(exact_mass_1d(after) - exact_mass_1d(before))
    stream = estimator_stream(pre_state, EstimatorTag.MASS_CHANGE, rng)
    points = sample_in_ball(Ball(event.center, params.radius), stream, method.n_samples)
    diff = evaluate_many(post_state, points) - evaluate_many(pre_state, points)
    volume = params.event_volume
    return Estimate(
        value=volume * float(diff.mean()),
        stderr=volume * float(diff.std(ddof=1)) / math.sqrt(method.n_samples),
    )


def mass_change_check(
    pre_state: ChainState,
    event: Event,
    post_state: ChainState,
    method: EstimatorMethod,
    rng: Optional[np.random.Generator] = None,
) -> Estimate:
    """Residual (M_{n+1} - M_n) - U (eps V(R) - Phi_n(C_{n+1}))."""
    params = pre_state.params
    delta = mass_increment(pre_state, post_state, method, rng)
    phi = local_average(pre_state, event.center, method, rng)
    predicted = params.impact * (float(event.positive) * params.event_volume - phi.value)
    return Estimate(
        value=delta.value - predicted,
        stderr=math.hypot(delta.stderr, params.impact * phi.stderr),
        exact=method.is_exact,
    )


def identity_increments(
    trajectory: Trajectory,
    method: EstimatorMethod,
    horizon: Optional[int] = None,
) -> List[float]:
    """U (eps_{n+1} V(R) - Phi_n(C_{n+1})) for n = 0..horizon-1."""
    params = trajectory.params
    out: List[float] = []
    states: Iterator[ChainState] = trajectory.states(horizon)
    for state, event in zip(states, trajectory.events[:horizon]):
        phi = local_average(state, event.center, method)
        out.append(params.impact * (float(event.positive) * params.event_volume - phi.value))
    return out


def tau_from_increments(increments: Sequence[float], alpha: float) -> int:
    """1 + last n with |increment[n]| >= alpha, 0 if none.

    Censored at the horizon: later increments are unknown.
    """
    for n in range(len(increments) - 1, -1, -1):
        if abs(increments[n]) >= alpha:
            return n + 1
    return 0


def tau_alpha_estimate(series: MassSeries, cfg: AlphaConfig) -> int:
    return tau_from_increments(series.increments, cfg.alpha)


@dataclass(frozen=True)
class ConstraintResult:
    """Outcome of the dichotomy at one step.

    Not applicable when |Delta M| >= alpha; otherwise a negative event needs
    Phi_n(C) < alpha/U and a positive one Phi_n(C) > V(R) - alpha/U.
    """

    applicable: bool
    positive: bool
    delta_m: float
    phi: Estimate
    bound: float
    slack: float
    passed: bool


def constraint_check(
    pre_state: ChainState,
    event: Event,
    cfg: AlphaConfig,
    method: EstimatorMethod,
    rng: Optional[np.random.Generator] = None,
    delta_m: Optional[float] = None,
) -> ConstraintResult:
    """Check the constraint on C_{n+1} when the mass barely moves.

    Args:
        delta_m: Measured M_{n+1} - M_n; derived from Phi_n(C) when omitted

    Raises:
        EstimatorError: Phi is estimated too coarsely relative to alpha / U
    """
    params = pre_state.params
    cfg.check(params)
    low, high = cfg.low_band(params), cfg.high_band(params)
    phi = local_average(pre_state, event.center, method, rng)
    if not method.is_exact and phi.stderr > MAX_RELATIVE_STDERR * low:
        raise EstimatorError(
            "local average stderr too large for the constraint check",
            code="STDERR_TOO_LARGE",
            details={"stderr": phi.stderr, "alpha_over_u": low},
        )
    if delta_m is None:
        delta_m = params.impact * (float(event.positive) * params.event_volume - phi.value)
    if event.positive:
        bound, slack = high, phi.value - high
    else:
        bound, slack = low, low - phi.value
    if abs(delta_m) >= cfg.alpha:
        return ConstraintResult(False, event.positive, delta_m, phi, bound, slack, True)
    passed = slack > 0 if method.is_exact else slack > -GATE_SIGMAS * phi.stderr
    return ConstraintResult(True, event.positive, delta_m, phi, bound, slack, passed)
