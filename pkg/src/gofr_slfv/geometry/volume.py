"""Volumes of ball unions and Monte Carlo integrals over them."""

from __future__ import annotations

import math
from typing import Callable, Optional

import numpy as np
from numpy.typing import NDArray

from gofr_slfv.exceptions import EstimatorError

from .balls import BallUnion, cover_counts, merge_intervals
from .estimates import Estimate, EstimatorMethod
from .sampling import sample_mixture

PointFunction = Callable[[NDArray[np.float64]], NDArray[np.float64]]


def exact_length_1d(u: BallUnion) -> float:
    """Total length of a one-dimensional union after interval merging."""
    return math.fsum(hi - lo for lo, hi in merge_intervals(u))


def mixture_integral(
    u: BallUnion,
    f: PointFunction,
    rng: np.random.Generator,
    n_samples: int,
) -> Estimate:
    """Monte Carlo estimate of the integral of f over the union.

    Uses the identity  int_u f = sum_i V_i * E_mix[ f(X) / cover_count(X) ]
    where X is drawn from the volume-weighted mixture of the essential balls.
    """
    proposals = u.essential
    points = sample_mixture(proposals, rng, n_samples)
    covers = np.maximum(cover_counts(proposals, points), 1)
    weights = np.asarray(f(points), dtype=np.float64) / covers
    total = proposals.total_ball_volume
    mean = float(weights.mean())
    stderr = float(weights.std(ddof=1)) / math.sqrt(n_samples)
    return Estimate(value=total * mean, stderr=total * stderr, exact=False)


def union_volume(
    u: BallUnion,
    method: EstimatorMethod,
    rng: Optional[np.random.Generator] = None,
) -> Estimate:
    """Volume of the union with its standard error.

    Args:
        u: Ball union
        method: exact-1d (merged interval length) or monte-carlo(n)
        rng: Random stream, required for Monte Carlo

    Raises:
        EstimatorError: exact-1d in d != 1, or Monte Carlo without a stream
    """
    method.require_dimension(u.dim)
    if method.is_exact:
        return Estimate.exact_value(exact_length_1d(u))
    if rng is None:
        raise EstimatorError("Monte Carlo volume estimation needs a random stream")
    return mixture_integral(u, lambda pts: np.ones(pts.shape[0]), rng, method.n_samples)
