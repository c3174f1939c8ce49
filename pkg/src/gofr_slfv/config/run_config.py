"""Per-run configuration: one JSON document, overridden by command-line flags.

Example document::

    {
      "params": {"dim": 1, "radius": 1.0, "impact": 0.5,
                 "initial_frequency": 1.0, "initial_radius": 1.0},
      "n_steps": 5000,
      "horizon_policy": "double-until-stable",
      "max_doublings": 3,
      "seeds": "0..499",
      "alpha": null,
      "out_dir": "out"
    }
"""

from __future__ import annotations

import json
import re
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic import ValidationError as PydanticValidationError

from gofr_slfv.chain import Params
from gofr_slfv.chain.params import MAX_SEED
from gofr_slfv.config.settings import DEFAULT_MC_SAMPLES, SimulationSettings
from gofr_slfv.diagnostics import AlphaConfig
from gofr_slfv.exceptions import ConfigurationError, SlfvError
from gofr_slfv.geometry import EstimatorMethod

_SEED_RANGE = re.compile(r"^\s*(\d+)\s*\.\.\s*(\d+)\s*$")


def parse_seeds(value: Union[int, str, Tuple[int, int], List[int]]) -> Tuple[int, int]:
    """An int N or a string "A..B" (inclusive) as the pair (A, B)."""
    if isinstance(value, bool):
        raise ValueError("seeds must be an integer or a range 'A..B'")
    if isinstance(value, int):
        return (value, value)
    if isinstance(value, (tuple, list)) and len(value) == 2:
        start, stop = int(value[0]), int(value[1])
    elif isinstance(value, str):
        text = value.strip()
        if text.isdigit():
            return (int(text), int(text))
        match = _SEED_RANGE.match(text)
        if match is None:
            raise ValueError(f"seeds must be an integer or a range 'A..B', got {value!r}")
        start, stop = int(match.group(1)), int(match.group(2))
    else:
        raise ValueError(f"seeds must be an integer or a range 'A..B', got {value!r}")
    if stop < start:
        raise ValueError(f"empty seed range {start}..{stop}")
    return (start, stop)


class HorizonPolicy(str, Enum):
    FIXED = "fixed"
    DOUBLE_UNTIL_STABLE = "double-until-stable"


class NonspatialConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    z0: float = Field(default=0.5, ge=0, le=1)
    steps: int = Field(default=1000, ge=0)
    flip_cutoff: int = Field(default=100, ge=0)


class RunConfig(BaseModel):
    """Everything one CLI invocation needs.

    Attributes:
        params: Chain parameters; the seed field is replaced per run
        n_steps: Horizon H
        horizon_policy: ``fixed`` or ``double-until-stable``
        max_doublings: Cap on horizon doublings for the second policy
        mc_samples: Monte Carlo samples per estimate (environment default when null)
        alpha: Mass-increment threshold (U V(R) / 4 when null)
        seeds: Inclusive seed range (A, B); a single seed is (N, N)
        out_dir: Output directory (environment default when null)
        trajectories: Verification suite size when ``seeds`` is a single seed
        stride: Run costly per-step checks every ``stride`` steps
        n_sup_points: Query points for the sup-frequency estimate in d >= 2
        grid_spacing: Grid oracle spacing for the d >= 2 verify mass check (off when null)
        nonspatial: Settings for the non-spatial ensemble
    """

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    params: Params = Field(default_factory=Params)
    n_steps: int = Field(default=5000, ge=0)
    horizon_policy: HorizonPolicy = HorizonPolicy.FIXED
    max_doublings: int = Field(default=3, ge=0)
    mc_samples: Optional[int] = Field(default=None, ge=2)
    alpha: Optional[float] = Field(default=None, gt=0)
    seeds: Tuple[int, int] = (0, 0)
    out_dir: Optional[Path] = None
    trajectories: int = Field(default=20, ge=1)
    stride: int = Field(default=1, ge=1)
    n_sup_points: int = Field(default=10_000, ge=1)
    grid_spacing: Optional[float] = Field(default=None, gt=0)
    nonspatial: NonspatialConfig = Field(default_factory=NonspatialConfig)

    @field_validator("seeds", mode="before")
    @classmethod
    def _parse_seeds(cls, value: Any) -> Tuple[int, int]:
        return parse_seeds(value)

    @model_validator(mode="after")
    def _check_seed_bounds(self) -> RunConfig:
        if self.seeds[1] >= MAX_SEED:
            raise ValueError(f"seeds must be below 2**64, got {self.seeds[1]}")
        return self

    @property
    def seed_list(self) -> List[int]:
        start, stop = self.seeds
        return list(range(start, stop + 1))

    @property
    def verify_seeds(self) -> List[int]:
        """The explicit range, or ``trajectories`` seeds from the single seed."""
        start, stop = self.seeds
        if stop > start:
            return self.seed_list
        return list(range(start, start + self.trajectories))

    def params_for(self, seed: int) -> Params:
        return self.params.with_seed(seed)

    def alpha_config(self) -> AlphaConfig:
        return AlphaConfig.from_params(self.params, self.alpha)

    def method(self, settings: Optional[SimulationSettings] = None) -> EstimatorMethod:
        samples = self.mc_samples
        if samples is None:
            samples = settings.mc_samples if settings is not None else DEFAULT_MC_SAMPLES
        return EstimatorMethod.for_dimension(self.params.dim, samples)

    def output_dir(self, settings: Optional[SimulationSettings] = None) -> Path:
        if self.out_dir is not None:
            return self.out_dir
        if settings is not None:
            return settings.output_dir
        return Path.cwd() / "out"

    def validate_run(self) -> None:
        """Cross-field checks that need the derived objects.

        Raises:
            ConfigurationError: alpha outside (0, U V(R) / 2)
        """
        try:
            self.alpha_config()
        except SlfvError as e:
            raise ConfigurationError(e.message, details=e.details) from e

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> RunConfig:
        try:
            config = cls.model_validate(data)
        except PydanticValidationError as e:
            raise ConfigurationError(f"Invalid run configuration: {e}") from e
        config.validate_run()
        return config

    @classmethod
    def load(cls, path: Path) -> RunConfig:
        """Read a JSON document.

        Raises:
            ConfigurationError: unreadable file, bad JSON or invalid fields
        """
        path = Path(path)
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except OSError as e:
            raise ConfigurationError(
                f"Cannot read config file: {e}", details={"path": str(path)}
            ) from e
        except json.JSONDecodeError as e:
            raise ConfigurationError(
                f"Config file is not valid JSON: {e}", details={"path": str(path)}
            ) from e
        if not isinstance(data, dict):
            raise ConfigurationError("Config document must be a JSON object")
        return cls.from_dict(data)

    def with_overrides(
        self,
        seeds: Optional[Union[int, str]] = None,
        n_steps: Optional[int] = None,
        out_dir: Optional[Path] = None,
        dim: Optional[int] = None,
        radius: Optional[float] = None,
        impact: Optional[float] = None,
        alpha: Optional[float] = None,
        mc_samples: Optional[int] = None,
    ) -> RunConfig:
        """A new config with every non-None flag applied and re-validated."""
        data = self.model_dump()
        params = dict(data["params"])
        for key, value in (("dim", dim), ("radius", radius), ("impact", impact)):
            if value is not None:
                params[key] = value
        if dim is not None and dim != self.params.dim:
            # patch centers of the old dimension cannot carry over
            params["initial_center"] = None
            params["extra_patches"] = ()
        data["params"] = params
        for key, value in (
            ("seeds", seeds),
            ("n_steps", n_steps),
            ("out_dir", out_dir),
            ("alpha", alpha),
            ("mc_samples", mc_samples),
        ):
            if value is not None:
                data[key] = value
        return RunConfig.from_dict(data)
