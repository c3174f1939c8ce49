"""The non-spatial voter chain Z_{n+1} = (1-U) Z_n + U eps_{n+1}, eps ~ Bernoulli(Z_n)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from gofr_slfv.exceptions import ValidationError


def _check(z: float, impact: float) -> None:
    if not 0.0 <= z <= 1.0:
        raise ValidationError(f"frequency must lie in [0, 1], got {z}")
    if not 0.0 < impact < 1.0:
        raise ValidationError(f"impact must lie in (0, 1), got {impact}")


def _update(z: float, impact: float, positive: bool) -> float:
    # 0 and 1 stay fixed points under rounding
    if positive:
        return 1.0 - (1.0 - impact) * (1.0 - z)
    return (1.0 - impact) * z


def nonspatial_step(z: float, impact: float, rng: np.random.Generator) -> float:
    _check(z, impact)
    positive = float(rng.random()) < z
    return _update(z, impact, positive)


@dataclass
class NonspatialPath:
    """Z_0..Z_n, eps_1..eps_n and the index of the last type flip (0 if none)."""

    values: NDArray[np.float64]
    flags: NDArray[np.bool_]
    last_flip: int

    @property
    def terminal(self) -> float:
        return float(self.values[-1])

    @property
    def n_steps(self) -> int:
        return len(self.flags)


def nonspatial_run(
    z0: float, impact: float, n_steps: int, rng: np.random.Generator
) -> NonspatialPath:
    _check(z0, impact)
    values = np.empty(n_steps + 1, dtype=np.float64)
    flags = np.zeros(n_steps, dtype=np.bool_)
    values[0] = z = z0
    draws = rng.random(n_steps)
    for k in range(n_steps):
        positive = bool(draws[k] < z)
        flags[k] = positive
        z = _update(z, impact, positive)
        values[k + 1] = z
    flips = np.flatnonzero(flags[1:] != flags[:-1])
    # flags[k] is eps_{k+1}; a flip at position k+1 of the diff is step k+2
    last_flip = int(flips[-1]) + 2 if flips.size else 0
    return NonspatialPath(values=values, flags=flags, last_flip=last_flip)


def nonspatial_step_many(
    z: NDArray[np.float64], impact: float, rng: np.random.Generator
) -> NDArray[np.float64]:
    """One step for a whole vector of independent chains."""
    positive = rng.random(z.shape) < z
    return np.where(positive, 1.0 - (1.0 - impact) * (1.0 - z), (1.0 - impact) * z)
