"""Chain parameters and initial data.

Validated with pydantic so that a bad radius, impact or frequency is
rejected before any simulation starts.
"""

from __future__ import annotations

from typing import Any, Dict, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from gofr_slfv.geometry import Ball, BallUnion, ball_volume, squared_distance

MAX_SEED = 2**64


class InitialPatch(BaseModel):
    """A ball carrying a constant initial frequency."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    center: Tuple[float, ...]
    radius: float = Field(gt=0)
    value: float = Field(ge=0, le=1)

    @property
    def ball(self) -> Ball:
        return Ball(self.center, self.radius)


class Params(BaseModel):
    """Parameters of the discrete-time chain.

    Attributes:
        dim: Space dimension d
        radius: Event radius R
        impact: Impact fraction U, strictly between 0 and 1
        initial_frequency: Frequency a on the initial ball
        initial_radius: Radius r0 of the initial ball
        initial_center: Center C0 of the initial ball (origin when omitted)
        seed: Root seed of every random stream of the run
        extra_patches: Additional initial balls with their own frequencies
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    dim: int = Field(default=1, ge=1)
    radius: float = Field(default=1.0, gt=0)
    impact: float = Field(default=0.5, gt=0, lt=1)
    initial_frequency: float = Field(default=1.0, ge=0, le=1)
    initial_radius: float = Field(default=1.0, gt=0)
    initial_center: Optional[Tuple[float, ...]] = None
    seed: int = Field(default=0, ge=0, lt=MAX_SEED)
    extra_patches: Tuple[InitialPatch, ...] = ()

    _patches: Tuple[InitialPatch, ...] = PrivateAttr(default=())

    @model_validator(mode="after")
    def _check_dimensions(self) -> Params:
        if self.initial_center is not None and len(self.initial_center) != self.dim:
            raise ValueError(
                f"initial_center has {len(self.initial_center)} coordinates, expected {self.dim}"
            )
        for patch in self.extra_patches:
            if len(patch.center) != self.dim:
                raise ValueError(
                    f"patch center has {len(patch.center)} coordinates, expected {self.dim}"
                )
        return self

    def model_post_init(self, __context: Any) -> None:
        base = InitialPatch(
            center=self.center, radius=self.initial_radius, value=self.initial_frequency
        )
        self._patches = (base,) + tuple(self.extra_patches)

    @property
    def center(self) -> Tuple[float, ...]:
        if self.initial_center is None:
            return (0.0,) * self.dim
        return tuple(float(c) for c in self.initial_center)

    @property
    def patches(self) -> Tuple[InitialPatch, ...]:
        """The base ball a*1_{B(C0, r0)} followed by the extra patches."""
        return self._patches

    @property
    def event_volume(self) -> float:
        """V(R), the volume of one event ball."""
        return ball_volume(self.dim, self.radius)

    def initial_cluster(self) -> BallUnion:
        """Delta_0: the union of patches with positive value.

        An all-zero initial field keeps the nominal initial ball as its
        sampling domain; that field is absorbing and never grows.
        """
        supported = [p.ball for p in self.patches if p.value > 0]
        if not supported:
            supported = [Ball(self.center, self.initial_radius)]
        return BallUnion(tuple(supported))

    def initial_value(self, x: Sequence[float]) -> float:
        """Y_0(x): the largest value among patches covering x."""
        value = 0.0
        for patch in self.patches:
            r = patch.radius
            if patch.value > value and squared_distance(x, patch.center) <= r * r:
                value = patch.value
        return value

    @property
    def is_zero_field(self) -> bool:
        return all(p.value == 0 for p in self.patches)

    def with_seed(self, seed: int) -> Params:
        return Params.model_validate({**self.model_dump(), "seed": seed})

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")
