"""Integrals of the frequency field: total mass, local averages, drift.

Every quantity is available exactly in d = 1 (through the piecewise oracle
field) and by Monte Carlo in any dimension. Monte Carlo draws come from
estimator substreams keyed by (step, purpose) unless a stream is passed in.
"""

from __future__ import annotations

import math
from collections import OrderedDict
from enum import IntEnum
from typing import Optional, Sequence
from weakref import WeakKeyDictionary

import numpy as np

from gofr_slfv.chain import ChainState, EventStore, StreamFactory, evaluate_many
from gofr_slfv.exceptions import EstimatorError
from gofr_slfv.geometry import (
    Ball,
    Estimate,
    EstimatorMethod,
    merge_intervals,
    mixture_integral,
    sample_in_ball,
    sample_uniform_many,
    sphere_area,
)
from gofr_slfv.oracle import (
    PiecewiseField1D,
    apply_event_1d,
    exact_drift_1d,
    exact_mass_1d,
    exact_phi_1d,
    initial_field_1d,
    sup_phi_1d,
)


class EstimatorTag(IntEnum):
    MASS = 1
    PHI = 2
    DRIFT = 3
    MASS_CHANGE = 4
    FORBIDDEN = 5
    GROWTH = 6
    LIPSCHITZ = 7
    QUERIES = 8


def estimator_stream(
    state: ChainState, tag: EstimatorTag, rng: Optional[np.random.Generator] = None, *keys: int
) -> np.random.Generator:
    if rng is not None:
        return rng
    return StreamFactory(state.params.seed).estimator(state.step, int(tag), *keys)


class _FieldCursor:
    """Recently built exact fields of one event store, keyed by step."""

    KEEP = 8

    def __init__(self) -> None:
        self.fields: "OrderedDict[int, PiecewiseField1D]" = OrderedDict()

    def field_at(self, state: ChainState) -> PiecewiseField1D:
        step = state.step
        if step in self.fields:
            self.fields.move_to_end(step)
            return self.fields[step]
        base = max((k for k in self.fields if k <= step), default=None)
        if base is None:
            base, field = 0, initial_field_1d(state.params)
        else:
            field = self.fields[base]
        params = state.params
        for event in state.store.events[base:step]:
            field = apply_event_1d(
                field, event.center[0], params.radius, params.impact, event.positive
            )
        self.fields[step] = field
        while len(self.fields) > self.KEEP:
            self.fields.popitem(last=False)
        return field


_CURSORS: "WeakKeyDictionary[EventStore, _FieldCursor]" = WeakKeyDictionary()


def exact_field(state: ChainState) -> PiecewiseField1D:
    """The oracle field equal to Y_n, built incrementally along the run."""
    EstimatorMethod.exact_1d().require_dimension(state.params.dim)
    cursor = _CURSORS.get(state.store)
    if cursor is None:
        cursor = _CURSORS[state.store] = _FieldCursor()
    return cursor.field_at(state)


def total_mass(
    state: ChainState,
    method: EstimatorMethod,
    rng: Optional[np.random.Generator] = None,
) -> Estimate:
    """M_n, the integral of Y_n."""
    method.require_dimension(state.params.dim)
    if method.is_exact:
        return Estimate.exact_value(exact_mass_1d(exact_field(state)))
    stream = estimator_stream(state, EstimatorTag.MASS, rng)
    return mixture_integral(
        state.cluster, lambda pts: evaluate_many(state, pts), stream, method.n_samples
    )


def local_average(
    state: ChainState,
    x: Sequence[float],
    method: EstimatorMethod,
    rng: Optional[np.random.Generator] = None,
) -> Estimate:
    """Phi_n(x), the integral of Y_n over B(x, R)."""
    params = state.params
    method.require_dimension(params.dim)
    if method.is_exact:
        return Estimate.exact_value(exact_phi_1d(exact_field(state), x[0], params.radius))
    stream = estimator_stream(state, EstimatorTag.PHI, rng)
    points = sample_in_ball(Ball(tuple(x), params.radius), stream, method.n_samples)
    y = evaluate_many(state, points)
    volume = params.event_volume
    return Estimate(
        value=volume * float(y.mean()),
        stderr=volume * float(y.std(ddof=1)) / math.sqrt(method.n_samples),
    )


def martingale_drift(
    state: ChainState,
    method: EstimatorMethod,
    rng: Optional[np.random.Generator] = None,
) -> Estimate:
    """E[M_{n+1} - M_n | state]; zero for every state."""
    params = state.params
    method.require_dimension(params.dim)
    domain = state.cluster.expansion(params.radius)
    if method.is_exact:
        field = exact_field(state)
        return Estimate.exact_value(
            exact_drift_1d(field, params.radius, params.impact, merge_intervals(domain))
        )
    stream = estimator_stream(state, EstimatorTag.DRIFT, rng)
    n = method.n_samples
    centers = sample_uniform_many(domain, stream, n)
    offsets = sample_in_ball(Ball((0.0,) * params.dim, 1.0), stream, n)
    y_center = evaluate_many(state, centers)
    y_shifted = evaluate_many(state, centers + params.radius * offsets)
    # Phi(c) = V(R) * E_W[Y(c + R W)]
    g = params.event_volume * (y_center - y_shifted)
    return Estimate(
        value=params.impact * float(g.mean()),
        stderr=params.impact * float(g.std(ddof=1)) / math.sqrt(n),
    )


def sup_local_average(state: ChainState) -> float:
    """sup_x Phi_n(x), exact in d = 1."""
    return sup_phi_1d(exact_field(state), state.params.radius)


def lipschitz_check(
    state: ChainState,
    x: Sequence[float],
    y: Sequence[float],
    method: EstimatorMethod,
    rng: Optional[np.random.Generator] = None,
) -> Estimate:
    """Slack |y - x| S(R) - (Phi_n(y) - Phi_n(x)); never below zero."""
    params = state.params
    if len(x) != params.dim or len(y) != params.dim:
        raise EstimatorError("Lipschitz check points must match the chain dimension")
    phi_x = local_average(state, x, method, estimator_stream(state, EstimatorTag.LIPSCHITZ, rng, 0))
    phi_y = local_average(state, y, method, estimator_stream(state, EstimatorTag.LIPSCHITZ, rng, 1))
    bound = math.dist(x, y) * sphere_area(params.dim, params.radius)
    return Estimate(
        value=bound - (phi_y.value - phi_x.value),
        stderr=phi_x.combined_stderr(phi_y),
        exact=method.is_exact,
    )
