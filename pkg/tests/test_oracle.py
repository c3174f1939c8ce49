"""Tests for the exact d=1 field and the dense grid reference."""

import math

import numpy as np
import pytest

from gofr_slfv.chain import Params, evaluate_many, run
from gofr_slfv.diagnostics import total_mass
from gofr_slfv.exceptions import OracleBudgetError, ValidationError
from gofr_slfv.geometry import EstimatorMethod, sample_uniform_many
from gofr_slfv.oracle import (
    PiecewiseField1D,
    apply_event_1d,
    exact_drift_1d,
    exact_mass_1d,
    exact_phi_1d,
    grid_replay,
    initial_field_1d,
    level_set_intervals_1d,
    level_set_length_1d,
    replay_1d,
    sup_phi_1d,
)


def _random_field(rng: np.random.Generator, n_events: int = 40) -> PiecewiseField1D:
    field = PiecewiseField1D.from_patches([(0.0, 1.0, float(rng.uniform(0.1, 1.0)))])
    for _ in range(n_events):
        domain = field.expanded_support(1.0)
        center = float(rng.uniform(domain[0][0], domain[-1][1]))
        field = apply_event_1d(field, center, 1.0, 0.5, bool(rng.random() < 0.5))
    return field


class TestPiecewiseField:
    """Tests for PiecewiseField1D and apply_event_1d."""

    def test_negative_event_on_zero_field(self):
        """Nothing to shrink: the zero field stays zero."""
        field = apply_event_1d(PiecewiseField1D.zero(), 0.0, 1.0, 0.5, False)
        assert field.is_zero

    def test_positive_event_on_zero_field(self):
        """U on [c - R, c + R], 0 outside."""
        field = apply_event_1d(PiecewiseField1D.zero(), 3.0, 1.0, 0.5, True)
        assert field.breakpoints == (2.0, 4.0)
        assert field.values == (0.5,)
        assert field.evaluate(1.999) == 0.0
        assert field.evaluate(4.0) == 0.0

    def test_event_outside_support_carries_pieces(self):
        """An event away from the support leaves the existing pieces intact."""
        field = PiecewiseField1D.from_patches([(0.0, 1.0, 0.8)])
        after = apply_event_1d(field, 10.0, 1.0, 0.5, True)
        assert after.evaluate(0.0) == 0.8
        assert after.evaluate(10.0) == 0.5
        assert after.evaluate(5.0) == 0.0

    def test_support_is_preserved(self, rng):
        """Events never delete support."""
        field = _random_field(rng, 10)
        before = field.support_intervals()
        after = apply_event_1d(field, 0.0, 1.0, 0.5, False).support_intervals()
        for lo, hi in before:
            assert any(a <= lo and hi <= b for a, b in after)

    def test_values_in_unit_interval(self, rng):
        """Every piece stays inside [0, 1]."""
        field = _random_field(rng)
        assert all(0.0 <= v <= 1.0 for v in field.values)

    def test_piece_count_bound(self, random_trajectory_1d):
        """After n events the field has at most 2n + 2 pieces."""
        params = random_trajectory_1d.params
        field = initial_field_1d(params)
        assert field.piece_count <= 2
        for n, event in enumerate(random_trajectory_1d.events, start=1):
            field = apply_event_1d(
                field, event.center[0], params.radius, params.impact, event.positive
            )
            assert field.piece_count <= 2 * n + 2

    def test_rejects_bad_breakpoints(self):
        """Breakpoints must increase and match the values."""
        with pytest.raises(ValidationError):
            PiecewiseField1D((1.0, 0.0), (0.5,))
        with pytest.raises(ValidationError):
            PiecewiseField1D((0.0, 1.0), (0.5, 0.5))

    def test_initial_field_needs_dimension_one(self, params_2d):
        """The exact field is a d = 1 object."""
        with pytest.raises(ValidationError):
            initial_field_1d(params_2d)


class TestExactIntegrals:
    """Tests for mass, local average and drift in closed form."""

    def test_initial_mass(self):
        """a = 0.5 on [-2, 2] has mass 2."""
        field = initial_field_1d(Params(initial_frequency=0.5, initial_radius=2.0))
        assert exact_mass_1d(field) == 2.0

    def test_zero_field(self):
        """Everything vanishes on the zero field."""
        field = PiecewiseField1D.zero()
        assert exact_mass_1d(field) == 0.0
        assert exact_phi_1d(field, 0.0, 1.0) == 0.0
        assert exact_drift_1d(field, 1.0, 0.5) == 0.0
        assert sup_phi_1d(field, 1.0) == 0.0

    def test_phi_on_constant_block(self):
        """Y = a on [x - R, x + R] gives 2 R a."""
        field = PiecewiseField1D.from_patches([(0.0, 5.0, 0.4)])
        assert exact_phi_1d(field, 1.0, 1.5) == pytest.approx(2 * 1.5 * 0.4, abs=1e-15)

    def test_phi_disjoint_support(self):
        """Phi vanishes farther than R from the support."""
        field = PiecewiseField1D.from_patches([(0.0, 1.0, 1.0)])
        assert exact_phi_1d(field, 2.5, 1.0) == 0.0

    def test_phi_linear_ramp(self):
        """Phi(x) = x + L + R on the left ramp of 1 on [-L, L]."""
        field = PiecewiseField1D.from_patches([(0.0, 5.0, 1.0)])
        for x in (-5.9, -5.5, -4.2):
            assert exact_phi_1d(field, x, 1.0) == pytest.approx(x + 6.0, abs=1e-12)
        assert sup_phi_1d(field, 1.0) == 2.0

    def test_drift_single_block(self):
        """The drift of a single block is zero."""
        field = PiecewiseField1D.from_patches([(0.0, 1.0, 0.7)])
        assert abs(exact_drift_1d(field, 1.0, 0.5)) <= 1e-9

    def test_drift_random_fields(self, rng):
        """The drift of any field is zero."""
        for _ in range(30):
            field = _random_field(rng, int(rng.integers(1, 30)))
            assert abs(exact_drift_1d(field, 1.0, 0.5)) <= 1e-9

    def test_mass_matches_quadrature(self, random_trajectory_1d):
        """The exact mass agrees with a midpoint rule on a fine grid."""
        final = random_trajectory_1d.final
        field = replay_1d(random_trajectory_1d.params, random_trajectory_1d.events)
        lo, hi = field.breakpoints[0], field.breakpoints[-1]
        n = 200_000
        h = (hi - lo) / n
        midpoints = lo + (np.arange(n) + 0.5) * h
        quadrature = float(evaluate_many(final, midpoints[:, None]).sum()) * h
        # every breakpoint costs at most one cell
        assert abs(quadrature - exact_mass_1d(field)) <= (field.piece_count + 1) * h


class TestKernelEquivalence:
    """The oracle field and the replay kernel agree."""

    def test_agree_at_random_points(self, random_trajectory_1d, rng):
        """Agreement to 1e-12 at 1000 random points."""
        field = replay_1d(random_trajectory_1d.params, random_trajectory_1d.events)
        final = random_trajectory_1d.final
        points = sample_uniform_many(final.cluster.expansion(1.0), rng, 1000)
        kernel = evaluate_many(final, points)
        oracle = np.array([field.evaluate(float(p[0])) for p in points])
        assert float(np.max(np.abs(kernel - oracle))) <= 1e-12

    def test_multiple_patches(self, rng):
        """Extra initial patches replay the same way."""
        params = Params.model_validate(
            {
                "initial_frequency": 0.6,
                "extra_patches": [{"center": [3.0], "radius": 0.5, "value": 0.9}],
                "seed": 12,
            }
        )
        trajectory = run(params, 150)
        field = replay_1d(params, trajectory.events)
        points = sample_uniform_many(trajectory.final.cluster, rng, 500)
        kernel = evaluate_many(trajectory.final, points)
        oracle = np.array([field.evaluate(float(p[0])) for p in points])
        assert float(np.max(np.abs(kernel - oracle))) <= 1e-12


class TestLevelSets:
    """Tests for level sets of Phi."""

    def test_two_ramp_segments(self):
        """1 on [-5, 5], band [0.4, 1.6]: one 1.2-long segment on each ramp."""
        field = PiecewiseField1D.from_patches([(0.0, 5.0, 1.0)])
        intervals = level_set_intervals_1d(field, 1.0, 0.4, 1.6)
        assert len(intervals) == 2
        (a, b), (c, d) = intervals
        assert a == pytest.approx(-5.6, abs=1e-12)
        assert b == pytest.approx(-4.4, abs=1e-12)
        assert c == pytest.approx(4.4, abs=1e-12)
        assert d == pytest.approx(5.6, abs=1e-12)
        assert level_set_length_1d(field, 1.0, 0.4, 1.6) == pytest.approx(2.4, abs=1e-12)

    def test_empty_band(self):
        """An inverted band is empty."""
        field = PiecewiseField1D.from_patches([(0.0, 5.0, 1.0)])
        assert level_set_intervals_1d(field, 1.0, 1.5, 1.0) == []

    def test_lower_bound_must_be_positive(self):
        """The Phi = 0 region is unbounded and excluded."""
        with pytest.raises(ValidationError):
            level_set_intervals_1d(PiecewiseField1D.zero(), 1.0, 0.0, 1.0)

    def test_membership(self, rng):
        """Points inside the level set have Phi in the band."""
        field = _random_field(rng)
        for lo, hi in level_set_intervals_1d(field, 1.0, 0.3, 1.2):
            for x in np.linspace(lo, hi, 7):
                assert 0.3 - 1e-9 <= exact_phi_1d(field, float(x), 1.0) <= 1.2 + 1e-9


class TestGridOracle:
    """Tests for the dense grid reference."""

    def test_initial_disc_mass(self, params_2d):
        """No events: the discretized disc has mass close to pi."""
        h = 0.05
        grid = grid_replay(params_2d, [], h)
        assert grid.dim == 2
        assert abs(grid.mass() - math.pi) <= 2.0 * math.pi * h

    def test_refinement(self, params_2d):
        """Halving the spacing does not increase the discretization error."""
        coarse = abs(grid_replay(params_2d, [], 0.05).mass() - math.pi)
        fine = abs(grid_replay(params_2d, [], 0.025).mass() - math.pi)
        assert fine <= coarse + 2.0 * math.pi * 0.025

    def test_phi_of_full_block(self):
        """A ball inside a constant region integrates to a V(R)."""
        params = Params(dim=2, initial_frequency=0.5, initial_radius=3.0)
        grid = grid_replay(params, [], 0.05)
        assert abs(grid.phi((0.0, 0.0), 1.0) - 0.5 * math.pi) <= 0.5 * 2.0 * math.pi * 0.05
        assert grid.value_at((0.0, 0.0)) == 0.5
        assert grid.value_at((10.0, 10.0)) == 0.0

    @pytest.mark.slow
    def test_matches_monte_carlo_mass(self, params_2d):
        """Grid mass and Monte Carlo mass agree on a 50-event d=2 run."""
        trajectory = run(params_2d.with_seed(5), 50)
        h = 0.05
        grid = grid_replay(trajectory.params, trajectory.events, h)
        estimate = total_mass(trajectory.final, EstimatorMethod.monte_carlo(40_000))
        assert abs(grid.mass() - estimate.value) <= max(4 * estimate.stderr, 10 * h)

    def test_grid_matches_kernel_at_cell_centers(self, params_2d):
        """Cell values are the kernel evaluated at cell centers."""
        trajectory = run(params_2d.with_seed(6), 20)
        grid = grid_replay(trajectory.params, trajectory.events, 0.05)
        centers = grid.cell_centers()
        kernel = evaluate_many(trajectory.final, centers)
        assert float(np.max(np.abs(kernel - grid.values.ravel()))) <= 1e-12

    def test_spacing_limit(self, params_2d):
        """Spacing above R/20 is rejected."""
        with pytest.raises(ValidationError):
            grid_replay(params_2d, [], 0.1)

    def test_cell_budget(self, params_2d):
        """Grids over budget raise before allocating."""
        with pytest.raises(OracleBudgetError):
            grid_replay(params_2d, [], 0.05, cell_budget=100)
