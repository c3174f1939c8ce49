"""Per-purpose random substreams derived from one root seed.

Each purpose (event centers, parent uniforms, holding times, estimator
sampling, query placement) gets its own generator through a fixed
SeedSequence spawn key. Changing how many samples an estimator draws
therefore never perturbs a trajectory.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np


class StreamPurpose(IntEnum):
    CENTERS = 0
    UNIFORMS = 1
    EXPONENTIALS = 2
    ESTIMATOR = 3
    QUERIES = 4
    NONSPATIAL = 5


class StreamFactory:
    """Stable stream splitting for one root seed."""

    def __init__(self, seed: int):
        self.seed = int(seed)

    def generator(self, purpose: StreamPurpose, *keys: int) -> np.random.Generator:
        sequence = np.random.SeedSequence(
            entropy=self.seed, spawn_key=(int(purpose),) + tuple(int(k) for k in keys)
        )
        return np.random.Generator(np.random.PCG64(sequence))

    def exponentials(self) -> np.random.Generator:
        return self.generator(StreamPurpose.EXPONENTIALS)

    def estimator(self, *keys: int) -> np.random.Generator:
        """Estimator stream, keyed by e.g. (step, check number)."""
        return self.generator(StreamPurpose.ESTIMATOR, *keys)

    def queries(self, *keys: int) -> np.random.Generator:
        return self.generator(StreamPurpose.QUERIES, *keys)

    def nonspatial(self) -> np.random.Generator:
        return self.generator(StreamPurpose.NONSPATIAL)

    def chain(self) -> ChainStreams:
        return ChainStreams(
            centers=self.generator(StreamPurpose.CENTERS),
            uniforms=self.generator(StreamPurpose.UNIFORMS),
        )


@dataclass
class ChainStreams:
    """The two streams consumed by a chain step."""

    centers: np.random.Generator
    uniforms: np.random.Generator

    @classmethod
    def from_seed(cls, seed: int) -> ChainStreams:
        return StreamFactory(seed).chain()

    @classmethod
    def from_generator(cls, rng: np.random.Generator) -> ChainStreams:
        """Use a single generator for both purposes."""
        return cls(centers=rng, uniforms=rng)
