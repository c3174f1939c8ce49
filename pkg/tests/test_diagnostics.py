"""Tests for the estimators, gates and bounds in gofr_slfv.diagnostics."""

import math

import pytest
from pydantic import ValidationError as PydanticValidationError

from gofr_slfv.chain import ChainState, Event, Params, run
from gofr_slfv.diagnostics import (
    EXACT_TOLERANCE,
    AlphaConfig,
    GateResult,
    binomial_stderr,
    constraint_check,
    default_alpha,
    growth_bound_check,
    identity_increments,
    lipschitz_check,
    local_average,
    martingale_drift,
    mass_change_check,
    mass_increment,
    mass_series,
    mean_stderr,
    product_bound,
    product_factors,
    psi_threshold,
    tau_alpha_estimate,
    tau_from_increments,
    tolerance,
    total_mass,
    within_gate,
)
from gofr_slfv.exceptions import EstimatorError, ValidationError
from gofr_slfv.geometry import EstimatorMethod

EXACT = EstimatorMethod.exact_1d()


class TestGates:
    """Tests for the shared pass/fail gates."""

    def test_upper_and_lower(self):
        """Slack is signed distance to the bound."""
        assert GateResult.upper(1.0, 2.0) == GateResult(1.0, 2.0, 1.0, True)
        assert not GateResult.lower(1.0, 2.0).passed

    def test_tolerance(self):
        """1e-9 exact, 4 stderr + 1e-9 otherwise."""
        assert tolerance(0.5, exact=True) == EXACT_TOLERANCE
        assert tolerance(0.5, exact=False) == pytest.approx(2.0 + 1e-9)

    def test_within_gate(self):
        """Deviations inside the tolerance pass."""
        assert within_gate(1.0 + 5e-10, 1.0, 0.0, exact=True).passed
        assert not within_gate(1.1, 1.0, 0.01).passed

    def test_binomial_stderr(self):
        """sqrt(p (1 - p) / n)."""
        assert binomial_stderr(0.5, 100) == pytest.approx(0.05)
        with pytest.raises(ValueError):
            binomial_stderr(0.5, 0)

    def test_mean_stderr(self):
        """Running sums give the usual standard error."""
        values = [1.0, 2.0, 3.0, 4.0]
        expected = math.sqrt(sum((v - 2.5) ** 2 for v in values) / 3 / 4)
        stderr = mean_stderr(sum(values), sum(v * v for v in values), len(values))
        assert stderr == pytest.approx(expected)
        assert mean_stderr(1.0, 1.0, 1) == math.inf


class TestBounds:
    """Tests for alpha, psi and the product bound."""

    def test_default_alpha(self, params_1d):
        """U V(R) / 4."""
        assert default_alpha(params_1d) == 0.25

    @pytest.mark.parametrize("alpha", [0.5, 1.0])
    def test_alpha_above_range(self, params_1d, alpha):
        """alpha must stay below U V(R) / 2."""
        with pytest.raises(ValidationError):
            AlphaConfig.from_params(params_1d, alpha)

    def test_alpha_must_be_positive(self, params_1d):
        """alpha = 0 is rejected by the model."""
        with pytest.raises(PydanticValidationError):
            AlphaConfig.from_params(params_1d, 0.0)

    def test_bands(self, params_1d):
        """alpha / U and V(R) - alpha / U."""
        cfg = AlphaConfig(alpha=0.2)
        assert cfg.low_band(params_1d) == pytest.approx(0.4)
        assert cfg.high_band(params_1d) == pytest.approx(1.6)

    def test_psi_one_dimension(self, params_1d):
        """d=1, R=1, U=0.5, alpha=0.2: inner radius 0.6, psi 1.2."""
        assert psi_threshold(params_1d, AlphaConfig(alpha=0.2)) == pytest.approx(1.2)

    def test_psi_two_dimensions(self, params_2d):
        """d=2, R=1, U=0.5, alpha=0.25: psi = pi ((pi - 1) / (2 pi))^2."""
        expected = math.pi * ((math.pi - 1.0) / (2.0 * math.pi)) ** 2
        assert psi_threshold(params_2d, AlphaConfig(alpha=0.25)) == pytest.approx(expected)

    def test_psi_vanishes_at_the_limit(self, params_1d):
        """psi -> 0 as alpha -> U V(R) / 2."""
        assert psi_threshold(params_1d, AlphaConfig(alpha=0.5 - 1e-12)) < 1e-10

    def test_product_bound_example(self, params_1d):
        """(1 - 1.2/4)(1 - 1.2/8)(1 - 1.2/12) = 0.7 * 0.85 * 0.9."""
        bound = product_bound(params_1d, AlphaConfig(alpha=0.2), 4.0, 0, 2)
        assert bound == pytest.approx(0.5355)

    def test_zero_psi(self):
        """psi = 0 gives 1."""
        assert math.prod(product_factors(0.0, 4.0, 4.0, 0, 10)) == 1.0

    def test_factor_clamps_to_zero(self):
        """psi = |Delta_0^R| + l V(2R) gives a zero factor."""
        assert list(product_factors(8.0, 4.0, 4.0, 1, 1)) == [0.0]
        assert list(product_factors(20.0, 4.0, 4.0, 1, 1)) == [0.0]

    def test_product_monotone(self, rng):
        """The product shrinks as n or psi grows."""
        for _ in range(50):
            psi = float(rng.uniform(0.0, 2.0))
            d0 = float(rng.uniform(psi, 10.0))
            n = int(rng.integers(1, 30))
            base = math.prod(product_factors(psi, d0, 4.0, 0, n))
            assert math.prod(product_factors(psi, d0, 4.0, 0, n + 1)) <= base
            assert math.prod(product_factors(psi * 1.1, d0, 4.0, 0, n)) <= base

    def test_product_range(self):
        """l > n is rejected."""
        with pytest.raises(ValidationError):
            list(product_factors(1.0, 4.0, 4.0, 3, 2))

    def test_growth_bound(self, random_trajectory_1d):
        """|Delta_n^R| <= |Delta_0^R| + n V(2R) at every step."""
        for state in random_trajectory_1d.states():
            assert growth_bound_check(state, EXACT).value >= -EXACT_TOLERANCE

    def test_growth_bound_zero_at_start(self, params_1d):
        """At n = 0 the slack is zero."""
        state = ChainState.initial(params_1d)
        assert growth_bound_check(state, EXACT).value == 0.0


class TestFields:
    """Tests for total mass, local averages, drift and the Lipschitz check."""

    def test_initial_mass(self):
        """a = 0.5 on [-2, 2] has mass 2."""
        state = ChainState.initial(Params(initial_frequency=0.5, initial_radius=2.0))
        assert total_mass(state, EXACT).value == 2.0

    def test_zero_field_mass(self):
        """The zero field has mass 0."""
        assert total_mass(ChainState.initial(Params(initial_frequency=0.0)), EXACT).value == 0.0

    def test_mass_monte_carlo_matches_exact(self, random_trajectory_1d):
        """d=1 Monte Carlo mass within 4 stderr of the exact mass."""
        state = random_trajectory_1d.snapshot(100)
        exact = total_mass(state, EXACT)
        estimate = total_mass(state, EstimatorMethod.monte_carlo(20_000))
        assert within_gate(estimate.value, exact.value, estimate.stderr).passed

    def test_local_average_full_overlap(self):
        """Y = a on all of B(x, R) gives a V(R)."""
        state = ChainState.initial(Params(initial_frequency=0.4, initial_radius=5.0))
        assert local_average(state, (1.0,), EXACT).value == pytest.approx(0.8)

    def test_local_average_far_away(self, params_1d):
        """Phi vanishes far from the cluster."""
        assert local_average(ChainState.initial(params_1d), (7.0,), EXACT).value == 0.0

    def test_local_average_monte_carlo(self, random_trajectory_1d):
        """Exact and Monte Carlo Phi agree at event centers."""
        state = random_trajectory_1d.snapshot(150)
        method = EstimatorMethod.monte_carlo(10_000)
        for event in random_trajectory_1d.events[150:170]:
            exact = local_average(state, event.center, EXACT)
            estimate = local_average(state, event.center, method)
            assert within_gate(estimate.value, exact.value, estimate.stderr).passed

    def test_drift_exact(self, random_trajectory_1d):
        """The exact drift is zero at every step."""
        for state in random_trajectory_1d.states():
            assert abs(martingale_drift(state, EXACT).value) <= EXACT_TOLERANCE

    def test_drift_zero_field(self):
        """No mass, no drift."""
        state = ChainState.initial(Params(initial_frequency=0.0))
        assert martingale_drift(state, EXACT).value == 0.0

    def test_drift_monte_carlo_two_dimensions(self, params_2d):
        """d=2 drift within 4 stderr of zero."""
        trajectory = run(params_2d.with_seed(2), 30)
        method = EstimatorMethod.monte_carlo(20_000)
        for n in (0, 10, 20, 30):
            drift = martingale_drift(trajectory.snapshot(n), method)
            assert within_gate(drift.value, 0.0, drift.stderr).passed

    def test_exact_method_rejected_in_two_dimensions(self, params_2d):
        """exact-1d does not apply to d = 2."""
        with pytest.raises(EstimatorError):
            total_mass(ChainState.initial(params_2d), EXACT)

    def test_lipschitz_same_point(self, random_trajectory_1d):
        """x = y has zero slack."""
        slack = lipschitz_check(random_trajectory_1d.final, (0.3,), (0.3,), EXACT)
        assert slack.value == 0.0

    def test_lipschitz_far_from_support(self, params_1d):
        """Phi(x) = Phi(y) = 0 leaves the full bound |y - x| S(R)."""
        slack = lipschitz_check(ChainState.initial(params_1d), (10.0,), (12.0,), EXACT)
        assert slack.value == 4.0

    def test_lipschitz_random_pairs(self, random_trajectory_1d, rng):
        """No violation on random pairs."""
        state = random_trajectory_1d.final
        for _ in range(200):
            x, y = (float(rng.uniform(-6, 6)),), (float(rng.uniform(-6, 6)),)
            assert lipschitz_check(state, x, y, EXACT).value >= -EXACT_TOLERANCE

    def test_lipschitz_dimension(self, params_1d):
        """Points must match the dimension."""
        with pytest.raises(EstimatorError):
            lipschitz_check(ChainState.initial(params_1d), (0.0, 0.0), (0.0,), EXACT)


class TestMass:
    """Tests for mass increments, tau_alpha and the constraint dichotomy."""

    def test_mass_change_identity(self, random_trajectory_1d):
        """M_{n+1} - M_n = U (eps V(R) - Phi_n(C)) at every step."""
        states = random_trajectory_1d.states()
        pre = next(states)
        for post in states:
            event = post.event(post.step)
            residual = mass_change_check(pre, event, post, EXACT)
            assert abs(residual.value) <= EXACT_TOLERANCE
            pre = post

    def test_first_positive_event(self):
        """Phi_0(C) = |[C-1, C+1] intersect [-1, 1]| and the residual vanishes."""
        params = Params(initial_frequency=1.0)
        for seed in range(40):
            trajectory = run(params.with_seed(seed), 1)
            event = trajectory.events[0]
            if not event.positive:
                continue
            pre, post = trajectory.snapshot(0), trajectory.final
            c = event.center[0]
            overlap = min(c + 1.0, 1.0) - max(c - 1.0, -1.0)
            assert local_average(pre, event.center, EXACT).value == pytest.approx(overlap)
            assert abs(mass_change_check(pre, event, post, EXACT).value) <= 1e-12

    def test_mass_change_monte_carlo(self, params_2d):
        """d=2 residuals within 4 combined stderr."""
        trajectory = run(params_2d.with_seed(4), 15)
        method = EstimatorMethod.monte_carlo(20_000)
        states = list(trajectory.states())
        for pre, post in zip(states, states[1:]):
            residual = mass_change_check(pre, post.event(post.step), post, method)
            assert within_gate(residual.value, 0.0, residual.stderr).passed

    def test_mass_increment_needs_consecutive_states(self, random_trajectory_1d):
        """post must be exactly one step after pre."""
        with pytest.raises(ValidationError):
            mass_increment(
                random_trajectory_1d.snapshot(0), random_trajectory_1d.snapshot(2), EXACT
            )

    def test_series_matches_identity(self, random_trajectory_1d):
        """Measured increments equal the identity increments."""
        series = mass_series(random_trajectory_1d, EXACT, 80)
        identity = identity_increments(random_trajectory_1d, EXACT, 80)
        assert series.horizon == 80
        assert len(identity) == 80
        for measured, predicted in zip(series.increments, identity):
            assert measured == pytest.approx(predicted, abs=1e-9)

    def test_tau_all_small(self):
        """No increment reaches alpha: tau = 0."""
        assert tau_from_increments([0.01] * 20, 0.2) == 0

    def test_tau_single_large(self):
        """A single large increment at n = 7 gives tau = 8."""
        increments = [0.0] * 20
        increments[7] = -0.5
        assert tau_from_increments(increments, 0.2) == 8

    def test_tau_from_series(self, random_trajectory_1d):
        """tau_alpha from a mass series agrees with the identity increments."""
        cfg = AlphaConfig.from_params(random_trajectory_1d.params)
        series = mass_series(random_trajectory_1d, EXACT, 100)
        identity = identity_increments(random_trajectory_1d, EXACT, 100)
        assert tau_alpha_estimate(series, cfg) == tau_from_increments(identity, cfg.alpha)

    def test_constraint_negative_far_away(self, params_1d):
        """eps = 0 and Phi = 0 passes with slack alpha / U."""
        cfg = AlphaConfig.from_params(params_1d)
        event = Event(index=1, center=(5.0,), uniform=0.5, positive=False, frequency=0.0)
        result = constraint_check(ChainState.initial(params_1d), event, cfg, EXACT)
        assert result.applicable
        assert result.passed
        assert result.slack == pytest.approx(cfg.low_band(params_1d))

    def test_constraint_positive_full_overlap(self):
        """eps = 1 and Phi = V(R) passes."""
        params = Params(initial_radius=5.0)
        cfg = AlphaConfig.from_params(params)
        event = Event(index=1, center=(0.0,), uniform=0.5, positive=True, frequency=1.0)
        result = constraint_check(ChainState.initial(params), event, cfg, EXACT)
        assert result.applicable
        assert result.passed
        assert result.slack == pytest.approx(cfg.alpha / params.impact)

    def test_constraint_not_applicable(self, params_1d):
        """Large mass moves leave the dichotomy silent."""
        cfg = AlphaConfig.from_params(params_1d)
        event = Event(index=1, center=(0.0,), uniform=0.5, positive=False, frequency=1.0)
        result = constraint_check(ChainState.initial(params_1d), event, cfg, EXACT)
        assert not result.applicable

    def test_constraint_along_trajectory(self, random_trajectory_1d):
        """Every applicable step satisfies the dichotomy."""
        cfg = AlphaConfig.from_params(random_trajectory_1d.params)
        states = random_trajectory_1d.states()
        for state, event in zip(states, random_trajectory_1d.events):
            assert constraint_check(state, event, cfg, EXACT).passed

    def test_constraint_rejects_coarse_estimates(self, params_2d):
        """A Monte Carlo Phi too noisy relative to alpha / U raises."""
        cfg = AlphaConfig.from_params(params_2d)
        event = Event(index=1, center=(1.0, 0.0), uniform=0.5, positive=False, frequency=1.0)
        with pytest.raises(EstimatorError):
            constraint_check(
                ChainState.initial(params_2d), event, cfg, EstimatorMethod.monte_carlo(50)
            )
