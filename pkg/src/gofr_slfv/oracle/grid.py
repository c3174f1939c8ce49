"""Dense-grid reference field for d >= 2 (Riemann sums)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

from gofr_slfv.chain import Event, Params
from gofr_slfv.config.settings import DEFAULT_GRID_CELL_BUDGET
from gofr_slfv.exceptions import GeometryError, OracleBudgetError, ValidationError
from gofr_slfv.logger import get_logger

logger = get_logger("gofr-slfv.oracle")

# finest spacing relative to R for which Riemann sums are trusted
MAX_SPACING_RATIO = 1.0 / 20.0


@dataclass
class GridField:
    """Cell-center samples of a field on an axis-aligned grid.

    ``values[i_1, ..., i_d]`` is the field at origin + (i + 1/2) * spacing.
    """

    origin: NDArray[np.float64]
    spacing: float
    values: NDArray[np.float64]

    @property
    def dim(self) -> int:
        return self.values.ndim

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dim

    def cell_centers(self) -> NDArray[np.float64]:
        axes = [
            self.origin[k] + (np.arange(n) + 0.5) * self.spacing
            for k, n in enumerate(self.values.shape)
        ]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)

    def mass(self) -> float:
        return float(self.values.sum()) * self.cell_volume

    def value_at(self, x: Sequence[float]) -> float:
        idx = np.floor((np.asarray(x, dtype=np.float64) - self.origin) / self.spacing).astype(int)
        if np.any(idx < 0) or np.any(idx >= np.asarray(self.values.shape)):
            return 0.0
        return float(self.values[tuple(idx)])

    def phi(self, x: Sequence[float], radius: float) -> float:
        """Riemann sum of the field over B(x, R)."""
        x = np.asarray(x, dtype=np.float64)
        window, centers = _ball_window(self.origin, self.spacing, self.values.shape, x, radius)
        if window is None:
            return 0.0
        inside = np.sum((centers - x) ** 2, axis=-1) <= radius * radius
        return float(self.values[window][inside].sum()) * self.cell_volume


def _ball_window(
    origin: NDArray[np.float64],
    spacing: float,
    shape: Tuple[int, ...],
    center: NDArray[np.float64],
    radius: float,
):
    """Slice of the grid covering the bounding box of B(center, radius) and its cell centers."""
    lo = np.maximum(np.floor((center - radius - origin) / spacing).astype(int), 0)
    hi = np.minimum(np.ceil((center + radius - origin) / spacing).astype(int), np.asarray(shape))
    if np.any(hi <= lo):
        return None, None
    window = tuple(slice(int(a), int(b)) for a, b in zip(lo, hi))
    axes = [origin[k] + (np.arange(a, b) + 0.5) * spacing for k, (a, b) in enumerate(zip(lo, hi))]
    centers = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
    return window, centers


def grid_replay(
    params: Params,
    events: Iterable[Event],
    spacing: float,
    cell_budget: int = DEFAULT_GRID_CELL_BUDGET,
) -> GridField:
    """Apply every event to every covered cell center, in order.

    Raises:
        ValidationError: spacing above R/20
        OracleBudgetError: the grid would exceed ``cell_budget`` cells
    """
    if spacing <= 0 or spacing > params.radius * MAX_SPACING_RATIO:
        raise ValidationError(
            f"grid spacing {spacing} must lie in (0, R/20]", details={"radius": params.radius}
        )
    events = list(events)
    dim = params.dim
    for event in events:
        if len(event.center) != dim:
            raise GeometryError(f"event {event.index} has {len(event.center)} coordinates")

    # only the cluster carries mass: initial patches plus positive event balls
    balls = [(np.asarray(p.center), p.radius) for p in params.patches if p.value > 0]
    balls += [(np.asarray(e.center), params.radius) for e in events if e.positive]
    if not balls:
        balls = [(np.asarray(params.center), params.initial_radius)]
    lows = np.min([c - r for c, r in balls], axis=0) - spacing
    highs = np.max([c + r for c, r in balls], axis=0) + spacing
    shape = tuple(int(math.ceil(w / spacing)) for w in highs - lows)
    cells = math.prod(shape)
    if cells > cell_budget:
        raise OracleBudgetError(
            f"grid of {cells} cells exceeds the budget of {cell_budget}",
            details={"shape": list(shape), "spacing": spacing},
        )
    logger.debug("Grid oracle", cells=cells, events=len(events), spacing=spacing)

    values = np.zeros(shape, dtype=np.float64)
    for patch in params.patches:
        if patch.value <= 0:
            continue
        center = np.asarray(patch.center, dtype=np.float64)
        window, centers = _ball_window(lows, spacing, shape, center, patch.radius)
        if window is None:
            continue
        inside = np.sum((centers - center) ** 2, axis=-1) <= patch.radius**2
        block = values[window]
        block[inside] = np.maximum(block[inside], patch.value)

    keep = 1.0 - params.impact
    r2 = params.radius * params.radius
    for event in events:
        center = np.asarray(event.center, dtype=np.float64)
        window, centers = _ball_window(lows, spacing, shape, center, params.radius)
        if window is None:
            continue
        inside = np.sum((centers - center) ** 2, axis=-1) <= r2
        block = values[window]
        if event.positive:
            block[inside] = 1.0 - keep * (1.0 - block[inside])
        else:
            block[inside] = keep * block[inside]
    return GridField(origin=lows, spacing=spacing, values=values)
