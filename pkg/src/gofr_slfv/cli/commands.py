"""Subcommand implementations; each returns a process exit code."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path
from typing import List, Optional

from gofr_slfv.chain import Params, run
from gofr_slfv.config import SimulationSettings, get_settings
from gofr_slfv.config.run_config import HorizonPolicy, RunConfig
from gofr_slfv.diagnostics import (
    HorizonStability,
    VerificationSuite,
    freeze_report,
    nonspatial_ensemble,
    stable_horizon,
)
from gofr_slfv.exceptions import ConfigurationError
from gofr_slfv.geometry import EstimatorMethod
from gofr_slfv.logger import get_logger
from gofr_slfv.records import (
    SummaryRow,
    ensemble_statistics,
    write_freeze_report,
    write_json,
    write_nonspatial,
    write_summary_csv,
    write_trajectory,
    write_verification,
)

logger = get_logger("gofr-slfv.cli")

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_IO_ERROR = 3


def _stability(
    params: Params,
    config: RunConfig,
    method: EstimatorMethod,
    max_retries: int,
) -> HorizonStability:
    """Reports at H and 2H; the double-until-stable policy may push H further."""
    doublings = 0 if config.horizon_policy is HorizonPolicy.FIXED else config.max_doublings
    return stable_horizon(
        params,
        config.n_steps,
        doublings,
        config.alpha_config(),
        method,
        max_retries,
        config.n_sup_points,
    )


def cmd_run(config: RunConfig, settings: Optional[SimulationSettings] = None) -> int:
    """One trajectory: events.jsonl and freeze.json."""
    settings = settings or get_settings()
    seed = config.seeds[0]
    params = config.params_for(seed)
    cfg = config.alpha_config()
    method = config.method(settings)
    out_dir = config.output_dir(settings)
    logger.info("Run started", seed=seed, steps=config.n_steps, dim=params.dim, method=str(method))

    stability: Optional[HorizonStability] = None
    if config.horizon_policy is HorizonPolicy.FIXED:
        trajectory = run(params, config.n_steps, max_retries=settings.max_sampling_retries)
        report = freeze_report(trajectory, config.n_steps, cfg, method, config.n_sup_points)
    else:
        stability = _stability(params, config, method, settings.max_sampling_retries)
        trajectory = stability.trajectory
        report = stability.at_horizon

    write_trajectory(out_dir / "events.jsonl", trajectory)
    write_freeze_report(out_dir / "freeze.json", report, stability, params.to_dict())
    logger.info(
        "Run finished",
        seed=seed,
        steps=trajectory.n_steps,
        kappa_hat=report.kappa_hat,
        tau_alpha_hat=report.tau_alpha_hat,
    )
    return EXIT_OK


def _ensemble_member(
    config: RunConfig, seed: int, out_dir: Path, method: EstimatorMethod, max_retries: int
) -> SummaryRow:
    stability = _stability(config.params_for(seed), config, method, max_retries)
    write_trajectory(out_dir / f"events_{seed}.jsonl", stability.trajectory)
    return SummaryRow.from_stability(stability)


def cmd_ensemble(config: RunConfig, settings: Optional[SimulationSettings] = None) -> int:
    """Independent runs over a seed range, folded into summary.csv in seed order."""
    settings = settings or get_settings()
    seeds = config.seed_list
    if len(seeds) < 2:
        raise ConfigurationError(
            "ensemble needs a seed range with at least two seeds", details={"seeds": seeds}
        )
    out_dir = config.output_dir(settings)
    workers = min(settings.workers, len(seeds))
    logger.info("Ensemble started", seeds=len(seeds), steps=config.n_steps, workers=workers)

    member = partial(
        _ensemble_member,
        config,
        out_dir=out_dir,
        method=config.method(settings),
        max_retries=settings.max_sampling_retries,
    )
    rows: List[SummaryRow] = []
    if workers <= 1:
        rows = [member(seed) for seed in seeds]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(member, seed) for seed in seeds]
            for seed, future in zip(seeds, futures):
                rows.append(future.result())
                logger.debug("Ensemble member finished", seed=seed)

    write_summary_csv(out_dir / "summary.csv", rows)
    statistics = ensemble_statistics(rows)
    write_json(out_dir / "ensemble.json", statistics)
    logger.info(
        "Ensemble finished",
        seeds=len(rows),
        stable_fraction=statistics["stable_fraction"],
    )
    return EXIT_OK


def cmd_verify(config: RunConfig, settings: Optional[SimulationSettings] = None) -> int:
    """The invariant suite on fresh trajectories; exit 1 on any failed check."""
    settings = settings or get_settings()
    suite = VerificationSuite(
        config.params,
        cfg=config.alpha_config(),
        method=config.method(settings),
        stride=config.stride,
        grid_spacing=config.grid_spacing,
        cell_budget=settings.grid_cell_budget,
    )
    seeds = config.verify_seeds
    logger.info("Verification started", trajectories=len(seeds), steps=config.n_steps)
    report = suite.run_seeds(seeds, config.n_steps, settings.max_sampling_retries)
    write_verification(config.output_dir(settings), report)
    if not report.passed:
        logger.error("Verification failed", failures=len(report.failures))
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


def cmd_nonspatial(config: RunConfig, settings: Optional[SimulationSettings] = None) -> int:
    """Non-spatial chains over the seed range; exit 1 if a martingale gate fails."""
    settings = settings or get_settings()
    block = config.nonspatial
    ensemble = nonspatial_ensemble(block.z0, config.params.impact, block.steps, config.seed_list)
    write_nonspatial(config.output_dir(settings), ensemble, block.flip_cutoff)
    gate = ensemble.martingale_gate()
    passed = gate.passed and (ensemble.step_gate is None or ensemble.step_gate.passed)
    logger.info(
        "Non-spatial ensemble finished",
        runs=len(ensemble.seeds),
        mean_terminal=ensemble.mean_terminal,
        stderr=ensemble.stderr,
        passed=passed,
    )
    return EXIT_OK if passed else EXIT_VERIFICATION_FAILED
