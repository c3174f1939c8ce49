"""Continuous-time embedding: exponential holding times over the chain.

T_n = E_1/lambda(Y_0) + ... + E_n/lambda(Y_{n-1}) with lambda the volume
of the R-expansion of the support. X_t = Y_n on [T_n, T_{n+1}).
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from gofr_slfv.exceptions import HorizonError
from gofr_slfv.geometry import Ball, EstimatorMethod, union_volume
from gofr_slfv.logger import get_logger

from .dynamics import Trajectory, evaluate_frequency
from .streams import StreamFactory, StreamPurpose

logger = get_logger("gofr-slfv.chain")


@dataclass
class ClockSchedule:
    """Jump times T_0 = 0 < T_1 < ... and the rate used for each holding time.

    ``rates[k]`` and ``rate_stderr[k]`` belong to the increment T_{k+1} - T_k.
    """

    jump_times: List[float] = field(default_factory=lambda: [0.0])
    rates: List[float] = field(default_factory=list)
    rate_stderr: List[float] = field(default_factory=list)

    @property
    def horizon(self) -> float:
        return self.jump_times[-1]

    @property
    def increments(self) -> np.ndarray:
        return np.diff(np.asarray(self.jump_times))

    def step_at(self, t: float) -> int:
        """The n with T_n <= t < T_{n+1}."""
        if t < 0:
            raise HorizonError(f"time must be non-negative, got {t}")
        if t >= self.horizon:
            raise HorizonError(
                f"time {t} is beyond the computed horizon {self.horizon}",
                details={"horizon": self.horizon, "jumps": len(self.jump_times) - 1},
            )
        return bisect_right(self.jump_times, t) - 1


def jump_schedule(
    trajectory: Trajectory,
    rng: np.random.Generator,
    rate_method: EstimatorMethod,
    estimator_rng: Optional[np.random.Generator] = None,
) -> ClockSchedule:
    """Jump times for every step of ``trajectory``.

    Args:
        trajectory: A completed run
        rng: Stream for the exponential draws E_k
        rate_method: exact-1d (d = 1 only) or monte-carlo(n)
        estimator_rng: Stream for Monte Carlo rate estimates; derived from
            the run seed when omitted so the exponentials are unaffected

    Raises:
        EstimatorError: exact-1d requested for d != 1
    """
    params = trajectory.params
    rate_method.require_dimension(params.dim)
    if estimator_rng is None and not rate_method.is_exact:
        estimator_rng = StreamFactory(params.seed).generator(StreamPurpose.ESTIMATOR, 0xC10C)

    schedule = ClockSchedule()
    cluster = params.initial_cluster()
    rate = union_volume(cluster.expansion(params.radius), rate_method, estimator_rng)
    t = 0.0
    for event in trajectory.events:
        t += float(rng.standard_exponential()) / rate.value
        schedule.jump_times.append(t)
        schedule.rates.append(rate.value)
        schedule.rate_stderr.append(rate.stderr)
        if event.positive:
            cluster = cluster.with_ball(Ball(event.center, params.radius))
            rate = union_volume(cluster.expansion(params.radius), rate_method, estimator_rng)

    logger.debug("Jump schedule computed", jumps=trajectory.n_steps, horizon=t)
    return schedule


def continuous_query(
    schedule: ClockSchedule,
    trajectory: Trajectory,
    t: float,
    x: Sequence[float],
) -> float:
    """X_t(x).

    Raises:
        HorizonError: t < 0 or t at or beyond the last computed jump time
    """
    n = schedule.step_at(t)
    return evaluate_frequency(trajectory.snapshot(n), x)
