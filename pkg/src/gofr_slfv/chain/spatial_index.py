"""Uniform grid bucket index over event balls.

Cells are cubes of side ``cell_size``. An event ball is registered in
every cell it meets, so a point query only reads the bucket of the cell
containing the point. Buckets hold event positions in insertion order,
which keeps them sorted for prefix queries.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_left
from collections import defaultdict
from typing import DefaultDict, Iterator, List, Sequence, Tuple

Cell = Tuple[int, ...]


class GridIndex:
    def __init__(self, cell_size: float, dim: int):
        if cell_size <= 0:
            raise ValueError(f"cell_size must be positive, got {cell_size}")
        self.cell_size = float(cell_size)
        self.dim = dim
        self._buckets: DefaultDict[Cell, List[int]] = defaultdict(list)
        self._count = 0

    def __len__(self) -> int:
        return self._count

    def cell_of(self, x: Sequence[float]) -> Cell:
        s = self.cell_size
        return tuple(math.floor(v / s) for v in x)

    def _cells_meeting(self, center: Sequence[float], radius: float) -> Iterator[Cell]:
        s = self.cell_size
        ranges = [
            range(math.floor((c - radius) / s), math.floor((c + radius) / s) + 1) for c in center
        ]
        r2 = radius * radius
        for cell in itertools.product(*ranges):
            # squared distance from the center to the closed cell box
            gap2 = 0.0
            for c, k in zip(center, cell):
                lo = k * s
                hi = lo + s
                if c < lo:
                    gap2 += (lo - c) ** 2
                elif c > hi:
                    gap2 += (c - hi) ** 2
            if gap2 <= r2:
                yield cell

    def register(self, center: Sequence[float], radius: float, position: int) -> None:
        """Add the ball at ``position``; positions must arrive in increasing order."""
        for cell in self._cells_meeting(center, radius):
            self._buckets[cell].append(position)
        self._count += 1

    def candidates(self, x: Sequence[float], limit: int | None = None) -> List[int]:
        """Positions whose ball may contain x, optionally only those below ``limit``."""
        bucket = self._buckets.get(self.cell_of(x))
        if not bucket:
            return []
        if limit is None:
            return list(bucket)
        return bucket[: bisect_left(bucket, limit)]

    def truncated(self, limit: int) -> GridIndex:
        """A copy holding only positions below ``limit``."""
        copy = GridIndex(self.cell_size, self.dim)
        for cell, bucket in self._buckets.items():
            kept = bucket[: bisect_left(bucket, limit)]
            if kept:
                copy._buckets[cell] = kept
        copy._count = min(self._count, limit)
        return copy
