"""Tests for freeze reports and the post-freeze decay."""

import pytest

from gofr_slfv.chain import ChainState, Params, run
from gofr_slfv.diagnostics import (
    DECAY_TOLERANCE,
    AlphaConfig,
    decay_check,
    freeze_report,
    horizon_stability,
    stable_horizon,
    sup_frequency,
)
from gofr_slfv.exceptions import ValidationError
from gofr_slfv.geometry import EstimatorMethod, sample_uniform_many


class TestFreezeReport:
    """Tests for freeze_report."""

    def test_zero_field(self):
        """a = 0: nothing is ever positive."""
        trajectory = run(Params(initial_frequency=0.0, seed=1), 50)
        report = freeze_report(trajectory)
        assert report.kappa_hat == 0
        assert report.tau_alpha_hat == 0
        assert report.sup_freq == 0.0
        assert report.final_cluster_volume == 2.0
        assert report.n_steps == 50

    def test_matches_trajectory(self, random_trajectory_1d):
        """kappa_hat and the volume agree with the run at the horizon."""
        report = freeze_report(random_trajectory_1d, 100)
        assert report.n_steps == 100
        assert report.seed == 3
        assert report.kappa_hat == random_trajectory_1d.kappa_hat(100)
        assert report.tau_alpha_hat <= 100
        assert 0.0 < report.sup_freq <= 1.0
        assert report.final_cluster_volume_stderr == 0.0

    def test_to_dict(self, random_trajectory_1d):
        """Plain dict with every field."""
        data = freeze_report(random_trajectory_1d, 10).to_dict()
        assert data["n_steps"] == 10
        assert data["censored"] is True

    @pytest.mark.parametrize("horizon", [-1, 301])
    def test_horizon_out_of_range(self, random_trajectory_1d, horizon):
        """The horizon must lie inside the run."""
        with pytest.raises(ValidationError):
            freeze_report(random_trajectory_1d, horizon)

    def test_custom_alpha(self, random_trajectory_1d):
        """A larger alpha never gives a later tau."""
        small = freeze_report(random_trajectory_1d, 200, AlphaConfig(alpha=0.05))
        large = freeze_report(random_trajectory_1d, 200, AlphaConfig(alpha=0.45))
        assert large.tau_alpha_hat <= small.tau_alpha_hat


class TestSupFrequency:
    """Tests for sup_frequency."""

    def test_initial_one_dimension(self, params_1d):
        """a = 1 on the initial ball."""
        state = ChainState.initial(params_1d)
        assert sup_frequency(state, EstimatorMethod.exact_1d()) == 1.0

    def test_initial_two_dimensions(self, params_2d):
        """Patch centers are always queried."""
        state = ChainState.initial(params_2d)
        assert sup_frequency(state, EstimatorMethod.monte_carlo(100), n_sup_points=50) == 1.0


class TestHorizon:
    """Tests for horizon_stability and stable_horizon."""

    def test_reports_at_h_and_2h(self, params_1d):
        """One run to 2H gives both reports."""
        result = horizon_stability(params_1d.with_seed(5), 40)
        assert result.at_horizon.n_steps == 40
        assert result.at_double.n_steps == 80
        assert result.at_horizon.kappa_hat <= result.at_double.kappa_hat

    def test_reuses_long_trajectory(self, random_trajectory_1d):
        """A run already past 2H is not repeated."""
        params = random_trajectory_1d.params
        result = horizon_stability(params, 100, trajectory=random_trajectory_1d)
        assert result.at_double.kappa_hat == random_trajectory_1d.kappa_hat(200)

    def test_frozen_run_is_stable(self):
        """a = 0 never changes its report."""
        result = stable_horizon(Params(initial_frequency=0.0), 20, max_doublings=3)
        assert result.stable
        assert result.at_horizon.n_steps == 20

    def test_no_doublings(self, params_1d):
        """max_doublings = 0 returns the first comparison."""
        result = stable_horizon(params_1d.with_seed(9), 15, max_doublings=0)
        assert result.at_horizon.n_steps == 15
        assert result.at_double.n_steps == 30

    def test_doubling_extends_one_run(self, params_1d):
        """The carried run reaches twice the final horizon and matches a fresh one."""
        params = params_1d.with_seed(13)
        result = stable_horizon(params, 5, max_doublings=4)
        horizon = result.at_horizon.n_steps
        assert result.trajectory.n_steps == 2 * horizon
        fresh = horizon_stability(params, horizon)
        assert result.at_horizon == fresh.at_horizon
        assert result.at_double == fresh.at_double
        assert result.trajectory.events == fresh.trajectory.events


class TestDecay:
    """Tests for decay_check."""

    def test_decay_past_kappa(self, random_trajectory_1d, rng):
        """Y_n(x) = Y_kappa(x) (1 - U)^m for x in the cluster."""
        points = sample_uniform_many(random_trajectory_1d.final.cluster, rng, 30)
        for p in points:
            assert decay_check(random_trajectory_1d, tuple(map(float, p))) <= DECAY_TOLERANCE

    def test_decay_at_event_centers(self, random_trajectory_1d):
        """Event centers before a shorter horizon."""
        for event in random_trajectory_1d.events[230:250]:
            assert decay_check(random_trajectory_1d, event.center, 250) <= DECAY_TOLERANCE
