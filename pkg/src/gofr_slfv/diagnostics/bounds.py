"""The mass-increment threshold alpha and the bounds derived from it."""

from __future__ import annotations

import math
from typing import Iterator, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from gofr_slfv.chain import ChainState, Params
from gofr_slfv.exceptions import ValidationError
from gofr_slfv.geometry import Estimate, EstimatorMethod, ball_volume, sphere_area, union_volume

from .fields import EstimatorTag, estimator_stream


def default_alpha(params: Params) -> float:
    """U V(R) / 4, halfway inside the admissible range."""
    return params.impact * params.event_volume / 4.0


class AlphaConfig(BaseModel):
    """Threshold alpha on |M_{n+1} - M_n|; admissible when 0 < alpha < U V(R) / 2."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    alpha: float = Field(gt=0)

    @classmethod
    def from_params(cls, params: Params, alpha: Optional[float] = None) -> AlphaConfig:
        cfg = cls(alpha=default_alpha(params) if alpha is None else alpha)
        cfg.check(params)
        return cfg

    def upper_limit(self, params: Params) -> float:
        return params.impact * params.event_volume / 2.0

    def check(self, params: Params) -> None:
        limit = self.upper_limit(params)
        if not 0.0 < self.alpha < limit:
            raise ValidationError(
                f"alpha must lie in (0, U*V(R)/2) = (0, {limit})",
                details={"alpha": self.alpha, "impact": params.impact, "radius": params.radius},
            )

    def low_band(self, params: Params) -> float:
        """alpha / U."""
        return self.alpha / params.impact

    def high_band(self, params: Params) -> float:
        """V(R) - alpha / U."""
        return params.event_volume - self.alpha / params.impact


def psi_threshold(params: Params, cfg: AlphaConfig) -> float:
    """Volume of the ball of radius (V(R) - 2 alpha / U) / S(R)."""
    cfg.check(params)
    inner = (params.event_volume - 2.0 * cfg.alpha / params.impact) / sphere_area(
        params.dim, params.radius
    )
    return ball_volume(params.dim, inner)


def product_factors(
    psi: float, delta0_volume: float, step_volume: float, l: int, n: int
) -> Iterator[float]:
    """Factors 1 - psi / (|Delta_0^R| + j V(2R)) for j = l..n, clamped to [0, 1]."""
    if l > n:
        raise ValidationError(f"product range needs l <= n, got l={l}, n={n}")
    for j in range(l, n + 1):
        yield min(1.0, max(0.0, 1.0 - psi / (delta0_volume + j * step_volume)))


def product_bound(
    params: Params, cfg: AlphaConfig, delta0_R_volume: float, l: int, n: int
) -> float:
    """Upper bound on P(eps_l = ... = eps_n = 1 past tau_alpha)."""
    psi = psi_threshold(params, cfg)
    step_volume = ball_volume(params.dim, 2.0 * params.radius)
    return math.prod(product_factors(psi, delta0_R_volume, step_volume, l, n))


def growth_bound_check(
    state: ChainState,
    method: EstimatorMethod,
    rng: Optional[np.random.Generator] = None,
) -> Estimate:
    """Slack |Delta_0^R| + n V(2R) - |Delta_n^R|."""
    params = state.params
    stream = None if method.is_exact else estimator_stream(state, EstimatorTag.GROWTH, rng)
    initial = union_volume(params.initial_cluster().expansion(params.radius), method, stream)
    current = union_volume(state.cluster.expansion(params.radius), method, stream)
    budget = initial.value + state.step * ball_volume(params.dim, 2.0 * params.radius)
    return Estimate(
        value=budget - current.value,
        stderr=initial.combined_stderr(current),
        exact=method.is_exact,
    )
