"""Verification suite: every per-step and per-run check over a set of trajectories."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterable, List, Optional

import numpy as np

from gofr_slfv.chain import ChainState, Event, Params, StreamFactory, Trajectory, evaluate_many, run
from gofr_slfv.exceptions import EstimatorError
from gofr_slfv.geometry import EstimatorMethod, sample_uniform_many, sphere_area
from gofr_slfv.geometry.sampling import DEFAULT_MAX_RETRIES
from gofr_slfv.logger import get_logger
from gofr_slfv.config.settings import DEFAULT_GRID_CELL_BUDGET
from gofr_slfv.oracle import grid_replay, replay_1d

from .bounds import AlphaConfig, growth_bound_check, psi_threshold
from .fields import lipschitz_check, martingale_drift, sup_local_average, total_mass
from .forbidden import forbidden_region_volume, in_forbidden_band
from .freeze import DECAY_TOLERANCE, decay_check
from .gates import GateResult, tolerance
from .mass import constraint_check, mass_change_check, mass_increment

logger = get_logger("gofr-slfv.diagnostics")

ORACLE_TOLERANCE = 1e-12
FORBIDDEN_TOLERANCE = 1e-6
# Riemann-sum error allowance per unit of grid spacing for the grid mass check
GRID_MASS_CONSTANT = 10.0


@dataclass(frozen=True)
class CheckRow:
    trajectory: int
    step: int
    check: str
    value: float
    bound: float
    slack: float
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class VerificationReport:
    rows: List[CheckRow] = field(default_factory=list)
    skipped: Counter = field(default_factory=Counter)

    @property
    def failures(self) -> List[CheckRow]:
        return [r for r in self.rows if not r.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> Dict[str, Dict[str, int]]:
        """Per-check totals, failures and skips."""
        out: Dict[str, Dict[str, int]] = {}
        for row in self.rows:
            entry = out.setdefault(row.check, {"total": 0, "failed": 0, "skipped": 0})
            entry["total"] += 1
            entry["failed"] += int(not row.passed)
        for check, count in self.skipped.items():
            out.setdefault(check, {"total": 0, "failed": 0, "skipped": 0})["skipped"] = count
        return out

    def extend(self, other: VerificationReport) -> None:
        self.rows.extend(other.rows)
        self.skipped.update(other.skipped)


class VerificationSuite:
    """Runs the invariant checks on trajectories of one parameter set.

    Args:
        params: Chain parameters shared by every trajectory
        cfg: Mass-increment threshold (default U V(R) / 4)
        method: exact-1d in d = 1, Monte Carlo otherwise
        stride: Run the costly per-step checks every ``stride`` steps
        lipschitz_pairs: Random point pairs per checked step
        oracle_points: Query points for the kernel/oracle comparison (d = 1)
        decay_points: Query points for the post-freeze decay check
        grid_spacing: Grid oracle spacing for the d >= 2 mass cross-check (off when None)
        cell_budget: Cell cap for the grid oracle
    """

    def __init__(
        self,
        params: Params,
        cfg: Optional[AlphaConfig] = None,
        method: Optional[EstimatorMethod] = None,
        stride: int = 1,
        lipschitz_pairs: int = 5,
        oracle_points: int = 1000,
        decay_points: int = 20,
        grid_spacing: Optional[float] = None,
        cell_budget: int = DEFAULT_GRID_CELL_BUDGET,
    ):
        self.params = params
        self.cfg = cfg or AlphaConfig.from_params(params)
        self.cfg.check(params)
        self.method = method or EstimatorMethod.for_dimension(params.dim)
        self.method.require_dimension(params.dim)
        self.stride = max(1, stride)
        self.lipschitz_pairs = lipschitz_pairs
        self.oracle_points = oracle_points
        self.decay_points = decay_points
        self.grid_spacing = grid_spacing
        self.cell_budget = cell_budget
        self.psi = psi_threshold(params, self.cfg)

    def run_seeds(
        self, seeds: Iterable[int], n_steps: int, max_retries: int = DEFAULT_MAX_RETRIES
    ) -> VerificationReport:
        """Simulate one fresh trajectory per seed and check them all."""
        trajectories = (
            run(self.params.with_seed(seed), n_steps, max_retries=max_retries) for seed in seeds
        )
        return self.run(trajectories)

    def run(self, trajectories: Iterable[Trajectory]) -> VerificationReport:
        report = VerificationReport()
        for trajectory in trajectories:
            report.extend(self.check_trajectory(trajectory))
        logger.info(
            "Verification finished",
            rows=len(report.rows),
            failures=len(report.failures),
            skipped=sum(report.skipped.values()),
        )
        return report

    def _row(self, report: VerificationReport, seed: int, step: int, check: str, gate: GateResult):
        row = CheckRow(seed, step, check, gate.value, gate.bound, gate.slack, gate.passed)
        report.rows.append(row)
        if not row.passed:
            logger.warning(
                "Check failed",
                check=check,
                seed=seed,
                step=step,
                value=gate.value,
                bound=gate.bound,
            )

    def check_trajectory(self, trajectory: Trajectory) -> VerificationReport:
        report = VerificationReport()
        seed = trajectory.params.seed
        states = trajectory.states()
        pre = next(states)
        self._check_state(report, seed, pre)
        for post in states:
            event = post.event(post.step)
            self._check_step(report, seed, pre, event, post)
            self._check_state(report, seed, post)
            pre = post
        self._check_run(report, trajectory)
        return report

    def _check_state(self, report: VerificationReport, seed: int, state: ChainState) -> None:
        method = self.method
        checked = state.step % self.stride == 0
        if method.is_exact or checked:
            growth = growth_bound_check(state, method)
            self._row(
                report,
                seed,
                state.step,
                "growth_bound",
                GateResult.lower(growth.value, -tolerance(growth.stderr, growth.exact)),
            )
        if not checked:
            return
        mass = total_mass(state, method)
        self._row(
            report,
            seed,
            state.step,
            "mass_nonnegative",
            GateResult.lower(mass.value, -tolerance(mass.stderr, mass.exact)),
        )
        drift = martingale_drift(state, method)
        self._row(
            report,
            seed,
            state.step,
            "martingale_drift",
            GateResult.upper(abs(drift.value), tolerance(drift.stderr, drift.exact)),
        )
        self._check_lipschitz(report, seed, state)

    def _check_lipschitz(self, report: VerificationReport, seed: int, state: ChainState) -> None:
        if not self.lipschitz_pairs:
            return
        params = state.params
        rng = StreamFactory(params.seed).queries(state.step)
        window = state.cluster.expansion(2.0 * params.radius)
        points = sample_uniform_many(window, rng, 2 * self.lipschitz_pairs)
        for x, y in zip(points[0::2], points[1::2]):
            x, y = tuple(map(float, x)), tuple(map(float, y))
            slack = lipschitz_check(state, x, y, self.method, rng)
            bound = math.dist(x, y) * sphere_area(params.dim, params.radius)
            tol = tolerance(slack.stderr, slack.exact)
            self._row(
                report,
                seed,
                state.step,
                "lipschitz",
                GateResult.upper(bound - slack.value, bound + tol),
            )

    def _check_step(
        self,
        report: VerificationReport,
        seed: int,
        pre: ChainState,
        event: Event,
        post: ChainState,
    ) -> None:
        method, cfg, params = self.method, self.cfg, self.params
        if not method.is_exact and event.index % self.stride:
            return
        residual = mass_change_check(pre, event, post, method)
        self._row(
            report,
            seed,
            event.index,
            "mass_change",
            GateResult.upper(abs(residual.value), tolerance(residual.stderr, residual.exact)),
        )
        delta = mass_increment(pre, post, method)
        try:
            result = constraint_check(pre, event, cfg, method, delta_m=delta.value)
        except EstimatorError as e:
            report.skipped["constraint"] += 1
            logger.debug("Constraint check skipped", seed=seed, step=event.index, error=str(e))
            return
        if not result.applicable:
            return
        report.rows.append(
            CheckRow(
                seed,
                event.index,
                "constraint",
                result.phi.value,
                result.bound,
                result.slack,
                result.passed,
            )
        )
        if not result.passed:
            logger.warning("Check failed", check="constraint", seed=seed, step=event.index)
        if not method.is_exact:
            report.skipped["forbidden_region"] += 1
            return
        if sup_local_average(pre) <= cfg.high_band(params):
            return
        low, high = cfg.low_band(params), cfg.high_band(params)
        phi = result.phi.value
        outside = max(low - phi, phi - high)
        self._row(
            report,
            seed,
            event.index,
            "forbidden_center",
            GateResult(
                value=phi,
                bound=low if phi < low else high,
                slack=outside,
                passed=not in_forbidden_band(phi, params, cfg),
            ),
        )
        volume = forbidden_region_volume(pre, cfg, method)
        self._row(
            report,
            seed,
            event.index,
            "forbidden_volume",
            GateResult.lower(volume.value, self.psi - FORBIDDEN_TOLERANCE),
        )

    def _check_run(self, report: VerificationReport, trajectory: Trajectory) -> None:
        params = trajectory.params
        final = trajectory.final
        seed = params.seed
        rng = StreamFactory(seed).queries(trajectory.n_steps, 1)
        window = final.cluster.expansion(params.radius)
        if self.method.is_exact and self.oracle_points:
            queries = sample_uniform_many(window, rng, self.oracle_points)
            field_ = replay_1d(params, trajectory.events)
            kernel = evaluate_many(final, queries)
            oracle = np.array([field_.evaluate(float(p[0])) for p in queries])
            gap = float(np.max(np.abs(kernel - oracle)))
            self._row(
                report,
                seed,
                final.step,
                "oracle_equivalence",
                GateResult.upper(gap, ORACLE_TOLERANCE),
            )
        if not self.method.is_exact and self.grid_spacing is not None:
            h = self.grid_spacing
            grid = grid_replay(params, trajectory.events, h, self.cell_budget)
            mass = total_mass(final, self.method)
            bound = max(tolerance(mass.stderr, mass.exact), GRID_MASS_CONSTANT * h)
            self._row(
                report,
                seed,
                final.step,
                "grid_mass",
                GateResult.upper(abs(grid.mass() - mass.value), bound),
            )
        if self.decay_points:
            queries = sample_uniform_many(final.cluster, rng, self.decay_points)
            worst = max(decay_check(trajectory, tuple(map(float, p))) for p in queries)
            self._row(report, seed, final.step, "decay", GateResult.upper(worst, DECAY_TOLERANCE))

