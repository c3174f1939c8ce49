"""Ensembles of the non-spatial voter chain.

Z_n is a bounded martingale, so the ensemble mean of Z_n stays at z0 and
every path is eventually absorbed near 0 or 1. The last type flip measures
how long that takes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from numpy.typing import NDArray
from scipy import stats

from gofr_slfv.chain import StreamFactory, StreamPurpose, nonspatial_run, nonspatial_step_many
from gofr_slfv.exceptions import ValidationError

from .gates import GateResult, mean_stderr, within_gate

DEFAULT_FLIP_CUTOFF = 100
DEFAULT_STEP_DRAWS = 100_000


@dataclass(frozen=True)
class NonspatialEnsemble:
    z0: float
    impact: float
    n_steps: int
    seeds: List[int]
    terminals: NDArray[np.float64]
    last_flips: NDArray[np.int64]
    step_gate: Optional[GateResult] = None

    @property
    def mean_terminal(self) -> float:
        return float(self.terminals.mean())

    @property
    def stderr(self) -> float:
        if len(self.terminals) < 2:
            return float("inf")
        return float(stats.sem(self.terminals))

    def martingale_gate(self) -> GateResult:
        """Mean terminal value against z0; exact when z0 is absorbing."""
        absorbing = self.z0 in (0.0, 1.0)
        return within_gate(self.mean_terminal, self.z0, self.stderr, exact=absorbing)

    def no_flip_fraction(self, cutoff: int = DEFAULT_FLIP_CUTOFF) -> float:
        """Fraction of runs whose last flip happened at or before ``cutoff``."""
        return float(np.mean(self.last_flips <= cutoff))

    def to_dict(self, cutoff: int = DEFAULT_FLIP_CUTOFF) -> Dict[str, Any]:
        gate = self.martingale_gate()
        return {
            "z0": self.z0,
            "impact": self.impact,
            "n_steps": self.n_steps,
            "n_runs": len(self.seeds),
            "mean_terminal": self.mean_terminal,
            "stderr": self.stderr,
            "martingale_gate": gate.to_dict(),
            "flip_cutoff": cutoff,
            "no_flip_after_cutoff": self.no_flip_fraction(cutoff),
            "one_step_gate": self.step_gate.to_dict() if self.step_gate else None,
        }


def one_step_gate(z: float, impact: float, n_draws: int, rng: np.random.Generator) -> GateResult:
    """E[Z_1 | Z_0 = z] = z over ``n_draws`` independent single steps."""
    if n_draws < 2:
        raise ValidationError(f"one-step gate needs at least two draws, got {n_draws}")
    draws = nonspatial_step_many(np.full(n_draws, z, dtype=np.float64), impact, rng)
    total = float(draws.sum())
    stderr = mean_stderr(total, float(np.dot(draws, draws)), n_draws)
    return within_gate(total / n_draws, z, stderr, exact=z in (0.0, 1.0))


def nonspatial_ensemble(
    z0: float,
    impact: float,
    n_steps: int,
    seeds: Sequence[int],
    step_draws: int = DEFAULT_STEP_DRAWS,
) -> NonspatialEnsemble:
    """One path per seed, each on its own NONSPATIAL stream.

    The one-step martingale gate uses a side stream of the first seed;
    ``step_draws = 0`` skips it.
    """
    if not seeds:
        raise ValidationError("nonspatial ensemble needs at least one seed")
    if n_steps < 0:
        raise ValidationError(f"n_steps must be non-negative, got {n_steps}")
    terminals = np.empty(len(seeds), dtype=np.float64)
    flips = np.empty(len(seeds), dtype=np.int64)
    for i, seed in enumerate(seeds):
        path = nonspatial_run(z0, impact, n_steps, StreamFactory(seed).nonspatial())
        terminals[i] = path.terminal
        flips[i] = path.last_flip
    step_gate = None
    if step_draws:
        side = StreamFactory(seeds[0]).generator(StreamPurpose.NONSPATIAL, 1)
        step_gate = one_step_gate(z0, impact, step_draws, side)
    return NonspatialEnsemble(
        z0=z0,
        impact=impact,
        n_steps=n_steps,
        seeds=list(seeds),
        terminals=terminals,
        last_flips=flips,
        step_gate=step_gate,
    )
