"""The forbidden region F_n = {x : alpha/U <= Phi_n(x) <= V(R) - alpha/U}.

Phi_n vanishes outside the R-expansion of the support, so F_n lies inside
the 2R-expansion of the cluster. In d = 1 the region is a finite union of
intervals found by inverting Phi on each of its linear pieces. In higher
dimensions its volume is a hit-or-miss estimate over the 2R window, each
membership decided by an inner Monte Carlo estimate of Phi; the inner
noise biases points near the band edges only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from gofr_slfv.chain import ChainState, Event, Params, evaluate_many
from gofr_slfv.geometry import (
    Ball,
    Estimate,
    EstimatorMethod,
    cover_counts,
    sample_in_ball,
    sample_mixture,
)
from gofr_slfv.oracle import level_set_length_1d

from .bounds import AlphaConfig, psi_threshold
from .fields import EstimatorTag, estimator_stream, exact_field, local_average, sup_local_average

DEFAULT_INNER_SAMPLES = 256
_POINT_BLOCK = 256


def in_forbidden_band(phi: float, params: Params, cfg: AlphaConfig) -> bool:
    return cfg.low_band(params) <= phi <= cfg.high_band(params)


def _phi_many(
    state: ChainState, points: np.ndarray, inner: int, rng: np.random.Generator
) -> np.ndarray:
    """Monte Carlo Phi_n at each row of ``points`` with ``inner`` samples each."""
    params = state.params
    unit = Ball((0.0,) * params.dim, 1.0)
    out = np.empty(points.shape[0], dtype=np.float64)
    for start in range(0, points.shape[0], _POINT_BLOCK):
        block = points[start : start + _POINT_BLOCK]
        m = block.shape[0]
        offsets = sample_in_ball(unit, rng, m * inner) * params.radius
        samples = np.repeat(block, inner, axis=0) + offsets
        y = evaluate_many(state, samples).reshape(m, inner)
        out[start : start + m] = params.event_volume * y.mean(axis=1)
    return out


def forbidden_region_volume(
    state: ChainState,
    cfg: AlphaConfig,
    method: EstimatorMethod,
    rng: Optional[np.random.Generator] = None,
    inner_samples: int = DEFAULT_INNER_SAMPLES,
) -> Estimate:
    """|F_n| with its standard error."""
    params = state.params
    cfg.check(params)
    method.require_dimension(params.dim)
    low, high = cfg.low_band(params), cfg.high_band(params)
    if method.is_exact:
        length = level_set_length_1d(exact_field(state), params.radius, low, high)
        return Estimate.exact_value(length)
    stream = estimator_stream(state, EstimatorTag.FORBIDDEN, rng)
    window = state.cluster.expansion(2.0 * params.radius)
    n = method.n_samples
    points = sample_mixture(window, stream, n)
    covers = np.maximum(cover_counts(window, points), 1)
    phi = _phi_many(state, points, inner_samples, stream)
    hits = ((phi >= low) & (phi <= high)) / covers
    total = window.total_ball_volume
    return Estimate(
        value=total * float(hits.mean()),
        stderr=total * float(hits.std(ddof=1)) / math.sqrt(n),
    )


@dataclass(frozen=True)
class ForbiddenRegionStats:
    """Forbidden region at step n against the event C_{n+1}."""

    step: int
    psi: float
    f_volume: Estimate
    center_in_f: bool
    center_phi: Estimate
    sup_phi: Optional[float] = None

    def lower_bound_applies(self, params: Params, cfg: AlphaConfig) -> bool:
        """sup Phi_n above V(R) - alpha/U, the condition for |F_n| >= psi."""
        return self.sup_phi is not None and self.sup_phi > cfg.high_band(params)


def forbidden_region_stats(
    state: ChainState,
    event: Event,
    cfg: AlphaConfig,
    method: EstimatorMethod,
    rng: Optional[np.random.Generator] = None,
) -> ForbiddenRegionStats:
    params = state.params
    phi = local_average(state, event.center, method, rng)
    return ForbiddenRegionStats(
        step=state.step,
        psi=psi_threshold(params, cfg),
        f_volume=forbidden_region_volume(state, cfg, method, rng),
        center_in_f=in_forbidden_band(phi.value, params, cfg),
        center_phi=phi,
        sup_phi=sup_local_average(state) if method.is_exact else None,
    )


def center_in_forbidden(
    state: ChainState, x: Sequence[float], cfg: AlphaConfig, method: EstimatorMethod
) -> bool:
    return in_forbidden_band(local_average(state, x, method).value, state.params, cfg)
