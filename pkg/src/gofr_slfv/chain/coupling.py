"""Monotone coupling of two chains driven by the same events.

The upper chain draws (C, V) and always moves. The lower chain sees the
same event only when C falls in its own sampling domain; conditionally on
that it is uniform there, so the lower marginal is again the chain.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from typing import Callable, Iterable, Optional, Tuple

import numpy as np

from gofr_slfv.exceptions import CouplingError
from gofr_slfv.geometry import Ball, BallUnion, cover_counts, merge_intervals, sample_in_ball
from gofr_slfv.geometry.sampling import DEFAULT_MAX_RETRIES

from .dynamics import apply_event, step
from .params import Params
from .state import ChainState
from .streams import ChainStreams

CoupledObserver = Callable[[ChainState, ChainState], None]

# Points per ball for the containment test in d >= 2
CONTAINMENT_SAMPLES = 2048


def _inside_one_ball(ball: Ball, union: BallUnion) -> bool:
    return any(math.dist(ball.center, b.center) + ball.radius <= b.radius for b in union)


def _interval_inside(ball: Ball, merged: list[Tuple[float, float]]) -> bool:
    lo, hi = ball.interval()
    k = bisect_right(merged, (lo, math.inf)) - 1
    return k >= 0 and merged[k][0] <= lo and hi <= merged[k][1]


def _sampled_inside(ball: Ball, union: BallUnion) -> bool:
    # fixed seed: repeated checks of one pair agree
    rng = np.random.default_rng(0)
    points = sample_in_ball(ball, rng, CONTAINMENT_SAMPLES)
    directions = rng.standard_normal((CONTAINMENT_SAMPLES, ball.dim))
    directions /= np.linalg.norm(directions, axis=1)[:, None]
    sphere = np.asarray(ball.center) + ball.radius * directions
    return bool(np.all(cover_counts(union, np.vstack([points, sphere])) > 0))


def first_ball_outside(balls: Iterable[Ball], union: BallUnion) -> Optional[Ball]:
    """The first ball not contained in ``union``, or None.

    Exact in d = 1 (merged intervals). In d >= 2 a ball inside a single
    ball of the union passes outright; otherwise its interior and sphere
    are tested on a fixed sample of points.
    """
    merged = merge_intervals(union) if union.dim == 1 else None
    for ball in balls:
        if _inside_one_ball(ball, union):
            continue
        if merged is not None:
            if not _interval_inside(ball, merged):
                return ball
        elif not _sampled_inside(ball, union):
            return ball
    return None


def _check_initial_fields(a: Params, b: Params) -> None:
    for patch in a.patches:
        if patch.value == 0:
            continue
        # upper Y_0 >= value exactly on the union of upper patches at least as large
        support = [p.ball for p in b.patches if p.value >= patch.value]
        if not support or first_ball_outside([patch.ball], BallUnion(tuple(support))) is not None:
            raise CouplingError(
                "lower initial field is not dominated by the upper initial field",
                details={"patch": patch.ball.to_dict(), "value": patch.value},
            )


def check_coupling(lower: ChainState, upper: ChainState) -> None:
    """Raise CouplingError unless ``upper`` can drive ``lower``.

    Needs shared (d, R, U), Y_0 of the lower chain below Y_0 of the upper
    chain everywhere, and the lower cluster inside the upper cluster.
    """
    a, b = lower.params, upper.params
    if (a.dim, a.radius, a.impact) != (b.dim, b.radius, b.impact):
        raise CouplingError(
            "coupled chains must share dimension, radius and impact",
            details={
                "lower": [a.dim, a.radius, a.impact],
                "upper": [b.dim, b.radius, b.impact],
            },
        )
    _check_initial_fields(a, b)
    outside = first_ball_outside(lower.cluster, upper.cluster)
    if outside is not None:
        raise CouplingError(
            "lower cluster is not contained in the upper cluster",
            details={"ball": outside.to_dict()},
        )


def coupled_step(
    lower: ChainState,
    upper: ChainState,
    streams: ChainStreams,
    max_retries: int = DEFAULT_MAX_RETRIES,
) -> Tuple[ChainState, ChainState]:
    check_coupling(lower, upper)
    upper_next, event = step(upper, streams, max_retries)
    if lower.cluster.expansion(lower.params.radius).contains(event.center):
        lower, _ = apply_event(lower, event.center, event.uniform)
    return lower, upper_next


def coupled_run(
    lower: ChainState,
    upper: ChainState,
    n_steps: int,
    streams: ChainStreams,
    observer: Optional[CoupledObserver] = None,
) -> Tuple[ChainState, ChainState]:
    """``n_steps`` coupled steps, calling ``observer(lower, upper)`` after each."""
    for _ in range(n_steps):
        lower, upper = coupled_step(lower, upper, streams)
        if observer is not None:
            observer(lower, upper)
    return lower, upper

