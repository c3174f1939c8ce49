"""The discrete-time chain: frequency evaluation, stepping and runs.

A positive event at C maps y to 1 - (1-U)(1-y) inside B(C, R), a negative
one maps y to (1-U)y. Both forms equal y + U(eps - y) in exact arithmetic
and stay inside [0, 1] and monotone in y under floating point rounding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional
from typing import Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

from gofr_slfv.exceptions import GeometryError, RecordError
from gofr_slfv.geometry import Ball, Point, sample_uniform, squared_distance
from gofr_slfv.geometry.sampling import DEFAULT_MAX_RETRIES
from gofr_slfv.logger import get_logger

from .events import Event
from .params import Params
from .state import ChainState
from .streams import ChainStreams

logger = get_logger("gofr-slfv.chain")

StepObserver = Callable[[ChainState, Event], Any]


def update_frequency(y: float, impact: float, positive: bool) -> float:
    """One event's effect on a covered frequency value."""
    if positive:
        return 1.0 - (1.0 - impact) * (1.0 - y)
    return (1.0 - impact) * y


def _check_point(state: ChainState, x: Sequence[float]) -> None:
    if len(x) != state.params.dim:
        raise GeometryError(
            f"point has {len(x)} coordinates, expected {state.params.dim}",
            details={"point": list(x)},
        )


def evaluate_frequency(state: ChainState, x: Sequence[float]) -> float:
    """Y_n(x) by replaying only the events whose ball contains x."""
    _check_point(state, x)
    impact = state.params.impact
    y = state.params.initial_value(x)
    for event in state.covering_events(x):
        y = update_frequency(y, impact, event.positive)
    return y


def evaluate_frequency_naive(state: ChainState, x: Sequence[float]) -> float:
    """Y_n(x) by scanning the whole event log, without the spatial index."""
    _check_point(state, x)
    impact = state.params.impact
    r2 = state.params.radius * state.params.radius
    y = state.params.initial_value(x)
    for event in state.events:
        if squared_distance(x, event.center) <= r2:
            y = update_frequency(y, impact, event.positive)
    return y


def evaluate_many(state: ChainState, points: NDArray[np.float64]) -> NDArray[np.float64]:
    """Y_n at each row of ``points``, replaying the log once over all points.

    Uses the same update arithmetic as :func:`evaluate_frequency`.
    """
    params = state.params
    pts = np.asarray(points, dtype=np.float64).reshape(-1, params.dim)
    y = np.zeros(pts.shape[0], dtype=np.float64)
    for patch in params.patches:
        diff = pts - np.asarray(patch.center)
        inside = np.einsum("ij,ij->i", diff, diff) <= patch.radius * patch.radius
        y = np.where(inside & (patch.value > y), patch.value, y)
    keep = 1.0 - params.impact
    r2 = params.radius * params.radius
    for event in state.events:
        diff = pts - np.asarray(event.center)
        inside = np.einsum("ij,ij->i", diff, diff) <= r2
        if not inside.any():
            continue
        if event.positive:
            y[inside] = 1.0 - keep * (1.0 - y[inside])
        else:
            y[inside] = keep * y[inside]
    return y


def apply_event(state: ChainState, center: Point, uniform: float) -> Tuple[ChainState, Event]:
    """Apply an event with the given center and parent uniform to ``state``."""
    frequency = evaluate_frequency(state, center)
    positive = uniform <= frequency
    event = Event(
        index=state.step + 1,
        center=center,
        uniform=uniform,
        positive=positive,
        frequency=frequency,
    )
    cluster = state.cluster
    if positive:
        cluster = cluster.with_ball(Ball(center, state.params.radius))
    store = state.store.extended(state.step, event)
    return ChainState(params=state.params, store=store, step=event.index, cluster=cluster), event


def draw_uniform(rng: np.random.Generator) -> float:
    """A parent uniform in (0, 1]."""
    return 1.0 - float(rng.random())


def step(
    state: ChainState,
    streams: ChainStreams,
    max_retries: int = DEFAULT_MAX_RETRIES,
) -> Tuple[ChainState, Event]:
    """Advance the chain by one event; ``state`` is left untouched."""
    domain = state.cluster.expansion(state.params.radius)
    center = sample_uniform(domain, streams.centers, max_retries)
    return apply_event(state, center, draw_uniform(streams.uniforms))


@dataclass
class Trajectory:
    """Final state of a run plus whatever the observers collected."""

    params: Params
    final: ChainState
    observations: Dict[str, List[Any]] = field(default_factory=dict)
    streams: Optional[ChainStreams] = field(default=None, repr=False, compare=False)

    @property
    def n_steps(self) -> int:
        return self.final.step

    @property
    def events(self) -> List[Event]:
        return self.final.events

    def snapshot(self, n: int) -> ChainState:
        return self.final.snapshot(n)

    def kappa_hat(self, horizon: Optional[int] = None) -> int:
        """Last positive event index up to ``horizon`` (the whole run by default)."""
        n = self.final.step if horizon is None else min(horizon, self.final.step)
        return self.final.store.last_positive_upto(n)

    def states(self, upto: Optional[int] = None) -> Iterator[ChainState]:
        """States 0..upto in order, clusters grown incrementally."""
        last = self.final.step if upto is None else min(upto, self.final.step)
        cluster = self.params.initial_cluster()
        yield ChainState(self.params, self.final.store, 0, cluster)
        radius = self.params.radius
        for event in self.final.store.events[:last]:
            if event.positive:
                cluster = cluster.with_ball(Ball(event.center, radius))
            state = ChainState(self.params, self.final.store, event.index, cluster)
            yield state


def run(
    params: Params,
    n_steps: int,
    observers: Optional[Mapping[str, StepObserver]] = None,
    streams: Optional[ChainStreams] = None,
    max_retries: int = DEFAULT_MAX_RETRIES,
) -> Trajectory:
    """Run the chain for ``n_steps`` events.

    Args:
        params: Chain parameters; ``params.seed`` drives the streams
        n_steps: Number of events, >= 0
        observers: Named callbacks invoked with (state, event) after each step
        streams: Override the seed-derived streams
        max_retries: Union sampling retry cap

    Returns:
        Trajectory with one observation list per observer
    """
    if n_steps < 0:
        raise ValueError(f"n_steps must be >= 0, got {n_steps}")
    observers = dict(observers or {})
    streams = streams or ChainStreams.from_seed(params.seed)
    observations: Dict[str, List[Any]] = {name: [] for name in observers}
    log = logger.bind(seed=params.seed, dim=params.dim)
    log.debug("Run started", n_steps=n_steps)

    state = ChainState.initial(params)
    for _ in range(n_steps):
        state, event = step(state, streams, max_retries)
        for name, observer in observers.items():
            try:
                observations[name].append(observer(state, event))
            except Exception as e:
                log.error("Observer failed", observer=name, step=event.index, error=str(e))
                raise

    trajectory = Trajectory(
        params=params, final=state, observations=observations, streams=streams
    )
    log.debug(
        "Run finished",
        n_steps=n_steps,
        kappa_hat=trajectory.kappa_hat(),
        cluster_balls=len(state.cluster),
    )
    return trajectory

def extend_run(
    trajectory: Trajectory,
    n_steps: int,
    max_retries: int = DEFAULT_MAX_RETRIES,
) -> Trajectory:
    """Continue a run by ``n_steps`` events on its own streams.

    The result matches a fresh run to the longer horizon. Observations are
    not carried over.

    Raises:
        ValueError: negative ``n_steps``, or a trajectory without streams
    """
    if n_steps < 0:
        raise ValueError(f"n_steps must be >= 0, got {n_steps}")
    if trajectory.streams is None:
        raise ValueError("trajectory has no streams to continue from")
    if trajectory.final.step != len(trajectory.final.store):
        raise ValueError("only the newest state of a run can be continued")
    state = trajectory.final
    for _ in range(n_steps):
        state, _event = step(state, trajectory.streams, max_retries)
    logger.debug(
        "Run extended", seed=trajectory.params.seed, n_steps=state.step, added=n_steps
    )
    return Trajectory(params=trajectory.params, final=state, streams=trajectory.streams)


@dataclass(frozen=True)
class MembershipSignature:
    """Which initial patches and which event balls contain a point."""

    initial: Tuple[bool, ...]
    events: FrozenSet[int]


def membership_signature(state: ChainState, x: Sequence[float]) -> MembershipSignature:
    _check_point(state, x)
    initial = tuple(
        squared_distance(x, patch.center) <= patch.radius * patch.radius
        for patch in state.params.patches
    )
    return MembershipSignature(
        initial=initial, events=frozenset(e.index for e in state.covering_events(x))
    )


def replay(params: Params, events: Iterable[Event]) -> ChainState:
    """Rebuild a state from a recorded event log.

    Raises:
        RecordError: if an event is out of order, lies outside the sampling
            domain, or its recorded frequency or type differs from the replay
    """
    state = ChainState.initial(params)
    for recorded in events:
        if recorded.index != state.step + 1:
            raise RecordError(
                f"event {recorded.index} out of order, expected {state.step + 1}",
                code="REPLAY_MISMATCH",
            )
        if len(recorded.center) != params.dim:
            raise RecordError(
                f"event {recorded.index} has the wrong dimension", code="REPLAY_MISMATCH"
            )
        if not state.cluster.expansion(params.radius).contains(recorded.center):
            raise RecordError(
                f"event {recorded.index} lies outside the sampling domain", code="REPLAY_MISMATCH"
            )
        state, event = apply_event(state, recorded.center, recorded.uniform)
        if event.positive != recorded.positive or event.frequency != recorded.frequency:
            raise RecordError(
                f"event {recorded.index} does not replay to its recorded type",
                code="REPLAY_MISMATCH",
                details={
                    "recorded_frequency": recorded.frequency,
                    "replayed_frequency": event.frequency,
                },
            )
    return state
