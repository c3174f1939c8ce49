"""Immutable chain snapshots over a shared event store."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Sequence

from gofr_slfv.exceptions import ValidationError
from gofr_slfv.geometry import Ball, BallUnion, squared_distance

from .events import Event, EventStore
from .params import Params
from .spatial_index import GridIndex


@dataclass(frozen=True, eq=False)
class ChainState:
    """(Y_n, Delta_n) after ``step`` events.

    Y_n is never materialized; it is evaluated lazily from the first
    ``step`` events of ``store``.
    """

    params: Params
    store: EventStore
    step: int
    cluster: BallUnion

    @classmethod
    def initial(cls, params: Params) -> ChainState:
        return cls(
            params=params,
            store=EventStore(params.radius, params.dim),
            step=0,
            cluster=params.initial_cluster(),
        )

    @property
    def events(self) -> List[Event]:
        return self.store.events[: self.step]

    @property
    def spatial_index(self) -> GridIndex:
        return self.store.index

    def event(self, k: int) -> Event:
        """Event number k, 1 <= k <= step."""
        if not 1 <= k <= self.step:
            raise IndexError(f"event {k} outside 1..{self.step}")
        return self.store.events[k - 1]

    def covering_events(self, x: Sequence[float]) -> Iterator[Event]:
        """Events with index <= step whose ball contains x, in order."""
        r2 = self.params.radius * self.params.radius
        events = self.store.events
        for position in self.store.index.candidates(x, limit=self.step):
            event = events[position]
            if squared_distance(x, event.center) <= r2:
                yield event

    @property
    def last_positive(self) -> int:
        """Index of the last positive event so far (0 if none)."""
        return self.store.last_positive_upto(self.step)

    def snapshot(self, n: int) -> ChainState:
        """The state at step n, sharing this state's event store."""
        if not 0 <= n <= self.step:
            raise ValidationError(
                f"snapshot step {n} outside 0..{self.step}", details={"step": self.step}
            )
        if n == self.step:
            return self
        cluster = self.params.initial_cluster()
        radius = self.params.radius
        for event in self.store.positive_upto(n):
            cluster = cluster.with_ball(Ball(event.center, radius))
        return ChainState(params=self.params, store=self.store, step=n, cluster=cluster)
