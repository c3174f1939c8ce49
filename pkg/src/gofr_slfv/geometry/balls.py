"""Closed balls in R^d and finite unions of them.

Balls are closed (||x - c|| <= r). Unions keep the ordered list of balls,
overlaps included: the list order is meaningful to the chain (initial balls
first, then the balls of positive events in step order).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Iterable, Iterator, List, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

from gofr_slfv.exceptions import GeometryError

Point = Tuple[float, ...]

# Points per block when counting covers over many samples
_COVER_BLOCK = 8192


def as_point(x: Sequence[float] | NDArray[np.float64], dim: int | None = None) -> Point:
    """Normalize a coordinate sequence to a tuple of floats."""
    point = tuple(float(v) for v in x)
    if dim is not None and len(point) != dim:
        raise GeometryError(
            f"Point has {len(point)} coordinates, expected {dim}",
            code="DIMENSION_MISMATCH",
            details={"point": point, "dim": dim},
        )
    return point


def squared_distance(x: Sequence[float], c: Sequence[float]) -> float:
    """Squared Euclidean distance, summed coordinate by coordinate."""
    total = 0.0
    for xi, ci in zip(x, c):
        diff = xi - ci
        total += diff * diff
    return total


def ball_volume(d: int, r: float) -> float:
    """Volume of a d-dimensional ball of radius r.

    Closed forms for d <= 3 keep d=1 arithmetic exact (V = 2r).
    """
    _check_dim_radius(d, r)
    if d == 1:
        return 2.0 * r
    if d == 2:
        return math.pi * r * r
    if d == 3:
        return 4.0 * math.pi * r**3 / 3.0
    return math.pi ** (d / 2.0) * r**d / math.gamma(d / 2.0 + 1.0)


def sphere_area(d: int, r: float) -> float:
    """Surface area of the radius-r sphere, S(r) = d V(r) / r."""
    _check_dim_radius(d, r)
    if d == 1:
        return 2.0
    return d * ball_volume(d, r) / r


def _check_dim_radius(d: int, r: float) -> None:
    if d < 1:
        raise GeometryError(f"Dimension must be >= 1, got {d}", details={"dim": d})
    if not r > 0 or not math.isfinite(r):
        raise GeometryError(f"Radius must be positive and finite, got {r}", details={"radius": r})


@dataclass(frozen=True)
class Ball:
    """Closed ball B(center, radius)."""

    center: Point
    radius: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", as_point(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if len(self.center) < 1:
            raise GeometryError("Ball center needs at least one coordinate")
        if not self.radius > 0 or not math.isfinite(self.radius):
            raise GeometryError(
                f"Ball radius must be positive, got {self.radius}",
                details={"radius": self.radius},
            )

    @property
    def dim(self) -> int:
        return len(self.center)

    @property
    def volume(self) -> float:
        return ball_volume(self.dim, self.radius)

    def contains(self, x: Sequence[float]) -> bool:
        return squared_distance(x, self.center) <= self.radius * self.radius

    def grown(self, r: float) -> Ball:
        return Ball(self.center, self.radius + r)

    def interval(self) -> Tuple[float, float]:
        """[c - r, c + r] for a one-dimensional ball."""
        if self.dim != 1:
            raise GeometryError(
                "interval() is only defined in dimension 1", details={"dim": self.dim}
            )
        c = self.center[0]
        return (c - self.radius, c + self.radius)

    def to_dict(self) -> Dict[str, Any]:
        return {"center": list(self.center), "radius": self.radius}


@dataclass(frozen=True)
class BallUnion:
    """Finite union of closed balls sharing one dimension."""

    balls: Tuple[Ball, ...]
    _cache: Dict[float, "BallUnion"] = field(
        default_factory=dict, compare=False, repr=False, hash=False
    )

    def __post_init__(self) -> None:
        balls = tuple(self.balls)
        object.__setattr__(self, "balls", balls)
        if not balls:
            raise GeometryError("A ball union needs at least one ball", code="EMPTY_UNION")
        dim = balls[0].dim
        if any(b.dim != dim for b in balls):
            raise GeometryError(
                "All balls of a union must share one dimension",
                code="DIMENSION_MISMATCH",
                details={"dims": sorted({b.dim for b in balls})},
            )

    @classmethod
    def of(cls, balls: Iterable[Ball]) -> BallUnion:
        return cls(tuple(balls))

    @property
    def dim(self) -> int:
        return self.balls[0].dim

    def __len__(self) -> int:
        return len(self.balls)

    def __iter__(self) -> Iterator[Ball]:
        return iter(self.balls)

    @cached_property
    def centers(self) -> NDArray[np.float64]:
        return np.array([b.center for b in self.balls], dtype=np.float64)

    @cached_property
    def radii(self) -> NDArray[np.float64]:
        return np.array([b.radius for b in self.balls], dtype=np.float64)

    @cached_property
    def volumes(self) -> NDArray[np.float64]:
        return np.array([b.volume for b in self.balls], dtype=np.float64)

    @cached_property
    def cumulative_volumes(self) -> NDArray[np.float64]:
        return np.cumsum(self.volumes)

    @cached_property
    def essential(self) -> BallUnion:
        """The balls not contained in another ball of the union.

        Same union as a set. Of identical balls only the first is kept.
        """
        kept = np.array([0])
        for i in range(1, len(self.balls)):
            diff = self.centers[kept] - self.centers[i]
            dist = np.sqrt(np.einsum("ij,ij->i", diff, diff))
            r = self.radii[kept]
            if np.any(dist + self.radii[i] <= r):
                continue
            kept = np.append(kept[dist + r > self.radii[i]], i)
        if len(kept) == len(self.balls):
            return self
        return BallUnion(tuple(self.balls[i] for i in kept))

    @cached_property
    def sorted_ends(self) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Sorted left and right interval ends of a one-dimensional union."""
        c = self.centers[:, 0]
        return np.sort(c - self.radii), np.sort(c + self.radii)

    @property
    def total_ball_volume(self) -> float:
        """Sum of ball volumes (overlaps counted with multiplicity)."""
        return float(self.cumulative_volumes[-1])

    def with_ball(self, ball: Ball) -> BallUnion:
        """Return a new union with ``ball`` appended.

        A computed ``essential`` and cached expansions carry over incrementally.
        """
        grown = BallUnion(self.balls + (ball,))
        if "essential" in self.__dict__:
            grown.__dict__["essential"] = _essential_with(self.essential, ball)
        for r, expanded in self._cache.items():
            grown._cache[r] = expanded.with_ball(ball.grown(r))
        return grown

    def contains(self, x: Sequence[float]) -> bool:
        return any(b.contains(x) for b in self.balls)

    def expansion(self, r: float) -> BallUnion:
        return expansion(self, r)

    def cover_count(self, x: Sequence[float]) -> int:
        return cover_count(self, x)

    def bounding_box(self) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Axis-aligned (lower, upper) corners enclosing every ball."""
        lower = (self.centers - self.radii[:, None]).min(axis=0)
        upper = (self.centers + self.radii[:, None]).max(axis=0)
        return lower, upper

    def to_dict(self) -> Dict[str, Any]:
        return {"dim": self.dim, "balls": [b.to_dict() for b in self.balls]}


def expansion(u: BallUnion, r: float) -> BallUnion:
    """R-expansion {x : dist(x, u) <= r}: every ball grown by r."""
    if not r > 0:
        raise GeometryError(f"Expansion radius must be positive, got {r}", details={"radius": r})
    cached = u._cache.get(r)
    if cached is None:
        cached = BallUnion(tuple(b.grown(r) for b in u.balls))
        base = u.essential
        cached.__dict__["essential"] = cached if base is u else expansion(base, r)
        u._cache[r] = cached
    return cached


def cover_count(u: BallUnion, x: Sequence[float]) -> int:
    """Number of balls of ``u`` containing x (closed-ball test)."""
    if len(x) != u.dim:
        raise GeometryError(
            f"Point has {len(x)} coordinates, union has dimension {u.dim}",
            code="DIMENSION_MISMATCH",
        )
    diff = u.centers - np.asarray(x, dtype=np.float64)
    return int(np.count_nonzero(np.einsum("ij,ij->i", diff, diff) <= u.radii * u.radii))


def cover_counts(u: BallUnion, points: NDArray[np.float64]) -> NDArray[np.int64]:
    """Vectorized cover_count over an (n, d) array of points."""
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if points.shape[1] != u.dim:
        raise GeometryError(
            f"Points have {points.shape[1]} coordinates, union has dimension {u.dim}",
            code="DIMENSION_MISMATCH",
        )
    if u.dim == 1:
        # balls with lo <= x, minus those already ended (hi < x)
        lows, highs = u.sorted_ends
        x = points[:, 0]
        return np.searchsorted(lows, x, side="right") - np.searchsorted(highs, x, side="left")
    r2 = u.radii * u.radii
    out = np.empty(points.shape[0], dtype=np.int64)
    for start in range(0, points.shape[0], _COVER_BLOCK):
        block = points[start : start + _COVER_BLOCK]
        d2 = ((block[:, None, :] - u.centers[None, :, :]) ** 2).sum(axis=2)
        out[start : start + _COVER_BLOCK] = np.count_nonzero(d2 <= r2[None, :], axis=1)
    return out


def merge_intervals(u: BallUnion) -> List[Tuple[float, float]]:
    """Disjoint sorted closed intervals covering a one-dimensional union."""
    if u.dim != 1:
        raise GeometryError("Interval merging needs dimension 1", details={"dim": u.dim})
    merged: List[Tuple[float, float]] = []
    for lo, hi in sorted(b.interval() for b in u.balls):
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return merged


def _essential_with(essential: BallUnion, ball: Ball) -> BallUnion:
    """``essential`` after appending ``ball`` to the union it was taken from."""
    diff = essential.centers - np.asarray(ball.center, dtype=np.float64)
    dist = np.sqrt(np.einsum("ij,ij->i", diff, diff))
    if np.any(dist + ball.radius <= essential.radii):
        return essential
    swallowed = dist + essential.radii <= ball.radius
    kept = tuple(b for b, s in zip(essential.balls, swallowed) if not s)
    return BallUnion(kept + (ball,))
