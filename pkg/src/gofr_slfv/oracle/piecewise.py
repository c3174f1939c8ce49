"""Exact one-dimensional reference field.

A d = 1 frequency field is a step function with finitely many pieces. Its
local average Phi(x) = int_{x-R}^{x+R} Y is piecewise linear with knots at
the field breakpoints shifted by +-R, so mass, Phi, the one-step drift and
level sets of Phi all have closed forms.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

from gofr_slfv.chain import Event, Params
from gofr_slfv.exceptions import GeometryError, ValidationError

MERGE_TOLERANCE = 1e-14

Interval = Tuple[float, float]


@dataclass(frozen=True)
class PiecewiseField1D:
    """Step function: ``values[i]`` on [breakpoints[i], breakpoints[i+1]), 0 outside.

    The empty field has no breakpoints.
    """

    breakpoints: Tuple[float, ...] = ()
    values: Tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.breakpoints and len(self.breakpoints) != len(self.values) + 1:
            raise ValidationError(
                "breakpoint count must equal value count + 1",
                details={"breakpoints": len(self.breakpoints), "values": len(self.values)},
            )
        if not self.breakpoints and self.values:
            raise ValidationError("values without breakpoints")
        for a, b in zip(self.breakpoints, self.breakpoints[1:]):
            if not a < b:
                raise ValidationError("breakpoints must be strictly increasing")
        for v in self.values:
            if not 0.0 <= v <= 1.0:
                raise ValidationError(f"field value {v} outside [0, 1]")

    @classmethod
    def zero(cls) -> PiecewiseField1D:
        return cls()

    @classmethod
    def from_patches(cls, patches: Iterable[Tuple[float, float, float]]) -> PiecewiseField1D:
        """Field equal to the max value among covering (center, radius, value) patches."""
        patches = [(c, r, v) for c, r, v in patches if v > 0]
        if not patches:
            return cls()
        knots = sorted({c - r for c, r, _ in patches} | {c + r for c, r, _ in patches})
        values = []
        for lo, hi in zip(knots, knots[1:]):
            mid = 0.5 * (lo + hi)
            values.append(max((v for c, r, v in patches if abs(mid - c) <= r), default=0.0))
        return _normalized(knots, values)

    @property
    def is_zero(self) -> bool:
        return not self.values

    @property
    def piece_count(self) -> int:
        return len(self.values)

    def evaluate(self, x: float) -> float:
        i = bisect_right(self.breakpoints, x) - 1
        if 0 <= i < len(self.values):
            return self.values[i]
        return 0.0

    @cached_property
    def _cumulative(self) -> Tuple[float, ...]:
        # integral of the field from -inf to each breakpoint
        out = [0.0]
        for i, v in enumerate(self.values):
            out.append(out[-1] + v * (self.breakpoints[i + 1] - self.breakpoints[i]))
        return tuple(out)

    def antiderivative(self, t: float) -> float:
        """int_{-inf}^t of the field."""
        bps = self.breakpoints
        if not bps or t <= bps[0]:
            return 0.0
        if t >= bps[-1]:
            return self._cumulative[-1]
        i = bisect_right(bps, t) - 1
        return self._cumulative[i] + self.values[i] * (t - bps[i])

    def support_intervals(self) -> List[Interval]:
        """Maximal intervals where the field is positive."""
        out: List[Interval] = []
        for i, v in enumerate(self.values):
            if v <= 0:
                continue
            lo, hi = self.breakpoints[i], self.breakpoints[i + 1]
            if out and out[-1][1] == lo:
                out[-1] = (out[-1][0], hi)
            else:
                out.append((lo, hi))
        return out

    def expanded_support(self, radius: float) -> List[Interval]:
        """The R-expansion of the support as merged intervals."""
        return merge_sorted([(lo - radius, hi + radius) for lo, hi in self.support_intervals()])


def merge_sorted(intervals: Sequence[Interval]) -> List[Interval]:
    out: List[Interval] = []
    for lo, hi in sorted(intervals):
        if out and lo <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    return out


def _normalized(breakpoints: Sequence[float], values: Sequence[float]) -> PiecewiseField1D:
    """Merge equal neighbours and drop zero pieces at both ends.

    Zero and non-zero pieces are never merged, so support is preserved.
    """
    bps = [breakpoints[0]]
    vals: List[float] = []
    for i, v in enumerate(values):
        if vals and (vals[-1] == 0.0) == (v == 0.0) and abs(vals[-1] - v) <= MERGE_TOLERANCE:
            bps[-1] = breakpoints[i + 1]
            continue
        vals.append(v)
        bps.append(breakpoints[i + 1])
    start = 0
    while start < len(vals) and vals[start] == 0.0:
        start += 1
    end = len(vals)
    while end > start and vals[end - 1] == 0.0:
        end -= 1
    if start == end:
        return PiecewiseField1D()
    return PiecewiseField1D(tuple(bps[start : end + 1]), tuple(vals[start:end]))


def apply_event_1d(
    field: PiecewiseField1D, center: float, radius: float, impact: float, positive: bool
) -> PiecewiseField1D:
    """The field after one event on [center - R, center + R].

    Pieces outside the event window are carried over unchanged.
    """
    lo, hi = center - radius, center + radius
    bps, vals = field.breakpoints, field.values
    if not positive and (field.is_zero or hi < bps[0] or lo > bps[-1]):
        return field
    keep = 1.0 - impact
    i = bisect_left(bps, lo)
    j = bisect_right(bps, hi)
    window = sorted(set(bps[i:j]) | {lo, hi})

    knots: List[float] = list(bps[:i])
    values: List[float] = list(vals[: max(i - 1, 0)])
    if i >= 1:
        # piece [bps[i-1], lo)
        values.append(vals[i - 1] if i - 1 < len(vals) else 0.0)
    for left in window[:-1]:
        y = field.evaluate(left)
        # same arithmetic as the replay kernel
        values.append(1.0 - keep * (1.0 - y) if positive else keep * y)
    knots.extend(window)
    if j < len(bps):
        # piece [hi, bps[j])
        values.append(vals[j - 1] if j >= 1 else 0.0)
        values.extend(vals[j:])
        knots.extend(bps[j:])
    return _normalized(knots, values)


def exact_mass_1d(field: PiecewiseField1D) -> float:
    bps = field.breakpoints
    return math.fsum(v * (bps[i + 1] - bps[i]) for i, v in enumerate(field.values))


def exact_phi_1d(field: PiecewiseField1D, x: float, radius: float) -> float:
    """int_{x-R}^{x+R} of the field."""
    if radius <= 0:
        raise GeometryError(f"radius must be positive, got {radius}")
    return field.antiderivative(x + radius) - field.antiderivative(x - radius)


def phi_knots(field: PiecewiseField1D, radius: float) -> List[float]:
    """Points between which Phi is linear."""
    return sorted({b - radius for b in field.breakpoints} | {b + radius for b in field.breakpoints})


def sup_phi_1d(field: PiecewiseField1D, radius: float) -> float:
    """sup_x Phi(x); attained at a knot since Phi is piecewise linear."""
    return max((exact_phi_1d(field, k, radius) for k in phi_knots(field, radius)), default=0.0)


def _integrate_phi(field: PiecewiseField1D, radius: float, lo: float, hi: float) -> float:
    knots = [k for k in phi_knots(field, radius) if lo < k < hi]
    points = [lo] + knots + [hi]
    values = [exact_phi_1d(field, p, radius) for p in points]
    return math.fsum(
        0.5 * (values[i] + values[i + 1]) * (points[i + 1] - points[i])
        for i in range(len(points) - 1)
    )


def exact_drift_1d(
    field: PiecewiseField1D,
    radius: float,
    impact: float,
    domain: Optional[Sequence[Interval]] = None,
) -> float:
    """E[M_{n+1} - M_n | Y_n = field] in closed form.

    (U / |D|) * int_D (2R Y(c) - Phi(c)) dc with D the R-expansion of the
    support (or ``domain`` when given).
    """
    intervals = list(domain) if domain is not None else field.expanded_support(radius)
    length = math.fsum(hi - lo for lo, hi in intervals)
    if field.is_zero or length <= 0:
        return 0.0
    total = math.fsum(
        2.0 * radius * (field.antiderivative(hi) - field.antiderivative(lo))
        - _integrate_phi(field, radius, lo, hi)
        for lo, hi in intervals
    )
    return impact * total / length


def level_set_intervals_1d(
    field: PiecewiseField1D, radius: float, low: float, high: float
) -> List[Interval]:
    """Intervals where low <= Phi(x) <= high, by inversion on each linear piece.

    ``low`` must be positive: the unbounded region where Phi = 0 is excluded.
    """
    if low <= 0:
        raise ValidationError(f"level set lower bound must be positive, got {low}")
    if high < low or field.is_zero:
        return []
    knots = phi_knots(field, radius)
    out: List[Interval] = []
    for s, t in zip(knots, knots[1:]):
        fs, ft = exact_phi_1d(field, s, radius), exact_phi_1d(field, t, radius)
        if fs == ft:
            if low <= fs <= high:
                out.append((s, t))
            continue
        # Phi(s + u (t - s)) = fs + u (ft - fs), u in [0, 1]
        u0 = (low - fs) / (ft - fs)
        u1 = (high - fs) / (ft - fs)
        a, b = max(0.0, min(u0, u1)), min(1.0, max(u0, u1))
        if a <= b:
            out.append((s + a * (t - s), s + b * (t - s)))
    return merge_sorted(out)


def level_set_length_1d(field: PiecewiseField1D, radius: float, low: float, high: float) -> float:
    return math.fsum(hi - lo for lo, hi in level_set_intervals_1d(field, radius, low, high))


def initial_field_1d(params: Params) -> PiecewiseField1D:
    """Y_0 for one-dimensional parameters."""
    if params.dim != 1:
        raise GeometryError(f"exact field needs d = 1, got d = {params.dim}")
    return PiecewiseField1D.from_patches((p.center[0], p.radius, p.value) for p in params.patches)


def replay_1d(params: Params, events: Iterable[Event]) -> PiecewiseField1D:
    """Y_n built by applying ``events`` to Y_0."""
    field = initial_field_1d(params)
    for event in events:
        field = apply_event_1d(field, event.center[0], params.radius, params.impact, event.positive)
    return field
