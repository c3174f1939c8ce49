"""Geometry of closed balls and finite ball unions in R^d.

Membership, volumes, R-expansions, exact uniform sampling over unions and
Monte Carlo integration with standard errors.
"""

from gofr_slfv.geometry.balls import (
    Ball,
    BallUnion,
    Point,
    as_point,
    ball_volume,
    cover_count,
    cover_counts,
    expansion,
    merge_intervals,
    sphere_area,
    squared_distance,
)
from gofr_slfv.geometry.estimates import EXACT_1D, MONTE_CARLO, Estimate, EstimatorMethod
from gofr_slfv.geometry.sampling import (
    sample_in_ball,
    sample_in_balls,
    sample_mixture,
    sample_uniform,
    sample_uniform_many,
)
from gofr_slfv.geometry.volume import exact_length_1d, mixture_integral, union_volume

__all__ = [
    "Ball",
    "BallUnion",
    "Point",
    "as_point",
    "ball_volume",
    "sphere_area",
    "expansion",
    "cover_count",
    "cover_counts",
    "merge_intervals",
    "squared_distance",
    "Estimate",
    "EstimatorMethod",
    "EXACT_1D",
    "MONTE_CARLO",
    "sample_in_ball",
    "sample_in_balls",
    "sample_mixture",
    "sample_uniform",
    "sample_uniform_many",
    "exact_length_1d",
    "mixture_integral",
    "union_volume",
]
