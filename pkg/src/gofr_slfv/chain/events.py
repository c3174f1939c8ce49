"""Resampling events and the append-only store that indexes them."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping

from gofr_slfv.exceptions import RecordError
from gofr_slfv.geometry import Point

from .spatial_index import GridIndex


@dataclass(frozen=True)
class Event:
    """One step of the chain.

    Attributes:
        index: Step number n >= 1
        center: Event center C_n
        uniform: Parent uniform V_n in (0, 1]
        positive: The offspring type epsilon_n
        frequency: Y_{n-1}(C_n), the value the uniform was compared against
    """

    index: int
    center: Point
    uniform: float
    positive: bool
    frequency: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.index,
            "center": list(self.center),
            "uniform": self.uniform,
            "positive": self.positive,
            "freq_at_center": self.frequency,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> Event:
        try:
            return cls(
                index=int(data["n"]),
                center=tuple(float(c) for c in data["center"]),
                uniform=float(data["uniform"]),
                positive=bool(data["positive"]),
                frequency=float(data["freq_at_center"]),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise RecordError(f"Malformed event record: {e}", details={"record": dict(data)}) from e


# Index registration radius is inflated by this factor so that a point on a
# cell boundary never misses a covering ball after rounding.
_INDEX_SLACK = 1.0 + 1e-9


class EventStore:
    """Events in step order plus a grid index with cell side R.

    States of one run share a store; a state at step n only reads the first
    n events. Extending a state that is not the newest forks the store.
    """

    def __init__(self, radius: float, dim: int):
        self.radius = radius
        self.dim = dim
        self.events: List[Event] = []
        self.index = GridIndex(radius, dim)
        self.positive_positions: List[int] = []

    def __len__(self) -> int:
        return len(self.events)

    def _append(self, event: Event) -> None:
        position = len(self.events)
        self.events.append(event)
        self.index.register(event.center, self.radius * _INDEX_SLACK, position)
        if event.positive:
            self.positive_positions.append(position)

    def fork(self, n: int) -> EventStore:
        """An independent store holding the first n events."""
        copy = EventStore(self.radius, self.dim)
        copy.events = self.events[:n]
        copy.index = self.index.truncated(n)
        cut = bisect_right(self.positive_positions, n - 1)
        copy.positive_positions = self.positive_positions[:cut]
        return copy

    def extended(self, n: int, event: Event) -> EventStore:
        """The store for the state after n events followed by ``event``."""
        store = self if n == len(self.events) else self.fork(n)
        store._append(event)
        return store

    def positive_upto(self, n: int) -> List[Event]:
        """Positive events among the first n, in order."""
        cut = bisect_right(self.positive_positions, n - 1)
        return [self.events[p] for p in self.positive_positions[:cut]]

    def last_positive_upto(self, n: int) -> int:
        """Index of the last positive event among the first n, or 0."""
        cut = bisect_right(self.positive_positions, n - 1)
        if cut == 0:
            return 0
        return self.positive_positions[cut - 1] + 1
