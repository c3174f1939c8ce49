"""Exact uniform sampling in balls and in finite unions of balls.

Union sampling picks a ball with probability proportional to its volume,
draws a uniform point in it and keeps the point with probability
1 / cover_count. The output is exactly uniform on the union and the
acceptance rate never drops below 1 / (number of balls). Balls contained
in another ball are left out of the proposal mixture; the union is the same.
"""

from __future__ import annotations

from typing import Optional

import numpy as np
from numpy.typing import NDArray

from gofr_slfv.exceptions import SamplingError

from .balls import Ball, BallUnion, Point, cover_counts

DEFAULT_MAX_RETRIES = 1_000_000

# Proposal block sizes for single-point sampling
MIN_PROPOSAL_BLOCK = 32
MAX_PROPOSAL_BLOCK = 4096


def _unit_directions(rng: np.random.Generator, n: int, dim: int) -> NDArray[np.float64]:
    z = rng.standard_normal((n, dim))
    norms = np.sqrt(np.einsum("ij,ij->i", z, z))
    # A zero normal vector has probability 0; redraw on the off chance
    while np.any(norms == 0.0):
        bad = norms == 0.0
        z[bad] = rng.standard_normal((int(bad.sum()), dim))
        norms = np.sqrt(np.einsum("ij,ij->i", z, z))
    return z / norms[:, None]


def sample_in_balls(
    centers: NDArray[np.float64],
    radii: NDArray[np.float64],
    rng: np.random.Generator,
) -> NDArray[np.float64]:
    """One uniform point in each ball (rows of centers, entries of radii).

    Uniform direction, radial coordinate r * u^(1/d) (inverse CDF of the
    density proportional to rho^(d-1)).
    """
    n, dim = centers.shape
    directions = _unit_directions(rng, n, dim)
    rho = radii * rng.random(n) ** (1.0 / dim)
    return centers + directions * rho[:, None]


def sample_in_ball(ball: Ball, rng: np.random.Generator, n: int = 1) -> NDArray[np.float64]:
    """``n`` uniform points in a single ball, as an (n, d) array."""
    centers = np.tile(np.asarray(ball.center, dtype=np.float64), (n, 1))
    radii = np.full(n, ball.radius)
    return sample_in_balls(centers, radii, rng)


def sample_mixture(u: BallUnion, rng: np.random.Generator, n: int) -> NDArray[np.float64]:
    """``n`` draws from the volume-weighted mixture of the union's balls.

    Not uniform on the union: overlap regions are over-represented by their
    cover count. Estimators reweight by 1 / cover_count.
    """
    cumulative = u.cumulative_volumes
    picks = np.searchsorted(cumulative, rng.random(n) * cumulative[-1], side="right")
    picks = np.minimum(picks, len(u) - 1)
    return sample_in_balls(u.centers[picks], u.radii[picks], rng)


def sample_uniform(
    u: BallUnion,
    rng: np.random.Generator,
    max_retries: int = DEFAULT_MAX_RETRIES,
) -> Point:
    """One exactly uniform point on the union.

    Proposals are drawn in blocks that double up to ``MAX_PROPOSAL_BLOCK``;
    the first accepted proposal of a block is returned.

    Raises:
        SamplingError: if ``max_retries`` proposals are all thinned away
    """
    proposals = u.essential
    block = MIN_PROPOSAL_BLOCK
    proposed = 0
    while proposed < max_retries:
        size = min(block, max_retries - proposed)
        points = sample_mixture(proposals, rng, size)
        covers = np.maximum(cover_counts(proposals, points), 1)
        accepted = np.flatnonzero(rng.random(size) * covers < 1.0)
        if accepted.size:
            return tuple(float(v) for v in points[accepted[0]])
        proposed += size
        block = min(2 * block, MAX_PROPOSAL_BLOCK)
    raise SamplingError(
        "Union sampling exceeded its retry cap",
        details={"max_retries": max_retries, "balls": len(proposals)},
    )


def sample_uniform_many(
    u: BallUnion,
    rng: np.random.Generator,
    n: int,
    max_retries: Optional[int] = None,
) -> NDArray[np.float64]:
    """``n`` exactly uniform points on the union, as an (n, d) array.

    ``max_retries`` caps the proposals spent on each requested point, so
    the batch may use up to ``n * max_retries`` proposals in total.
    """
    cap = max_retries if max_retries is not None else DEFAULT_MAX_RETRIES
    proposals = u.essential
    accepted: list[NDArray[np.float64]] = []
    have = 0
    proposed = 0
    while have < n:
        if proposed >= cap * n:
            raise SamplingError(
                "Union sampling exceeded its retry cap",
                details={"max_retries": cap, "accepted": have, "requested": n},
            )
        batch = min(max(2 * (n - have), MIN_PROPOSAL_BLOCK), cap * n - proposed)
        points = sample_mixture(proposals, rng, batch)
        covers = np.maximum(cover_counts(proposals, points), 1)
        keep = rng.random(batch) * covers < 1.0
        accepted.append(points[keep])
        have += int(keep.sum())
        proposed += batch
    if not accepted:
        return np.empty((0, u.dim), dtype=np.float64)
    return np.concatenate(accepted, axis=0)[:n]
