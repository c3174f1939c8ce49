"""Tests for the verification suite."""

import pytest

from gofr_slfv.chain import Params, run
from gofr_slfv.diagnostics import AlphaConfig, CheckRow, VerificationReport, VerificationSuite
from gofr_slfv.exceptions import EstimatorError, ValidationError
from gofr_slfv.geometry import EstimatorMethod


class TestVerificationSuite:
    """End-to-end checks on short runs."""

    def test_one_dimension_passes(self, params_1d):
        """Every check passes on exact d = 1 runs."""
        suite = VerificationSuite(params_1d, oracle_points=200, decay_points=10)
        report = suite.run_seeds([0, 1], 60)
        assert report.passed, [r.to_dict() for r in report.failures]
        summary = report.summary()
        for check in (
            "growth_bound",
            "mass_nonnegative",
            "martingale_drift",
            "lipschitz",
            "mass_change",
            "oracle_equivalence",
            "decay",
        ):
            assert summary[check]["total"] > 0
            assert summary[check]["failed"] == 0
        assert summary["oracle_equivalence"]["total"] == 2

    def test_stride_thins_state_checks(self, params_1d):
        """Exact growth runs every step, the rest every stride steps."""
        suite = VerificationSuite(params_1d, stride=10, lipschitz_pairs=0, oracle_points=0)
        summary = suite.run_seeds([2], 40).summary()
        assert summary["growth_bound"]["total"] == 41
        assert summary["mass_nonnegative"]["total"] == 5
        assert "lipschitz" not in summary
        assert "oracle_equivalence" not in summary

    @pytest.mark.slow
    def test_two_dimensions_monte_carlo(self, params_2d):
        """Monte Carlo checks pass and forbidden-region checks are skipped."""
        suite = VerificationSuite(
            params_2d,
            method=EstimatorMethod.monte_carlo(2000),
            stride=5,
            lipschitz_pairs=1,
            decay_points=5,
        )
        report = suite.run([run(params_2d.with_seed(1), 20)])
        assert report.passed, [r.to_dict() for r in report.failures]
        summary = report.summary()
        assert "oracle_equivalence" not in summary
        assert "forbidden_volume" not in summary
        assert summary["growth_bound"]["total"] == 5

    @pytest.mark.slow
    def test_grid_mass_against_monte_carlo(self, params_2d):
        """With a grid spacing the final mass is compared with the dense grid."""
        suite = VerificationSuite(
            params_2d,
            method=EstimatorMethod.monte_carlo(20_000),
            stride=10,
            lipschitz_pairs=0,
            decay_points=0,
            grid_spacing=0.05,
        )
        report = suite.run([run(params_2d.with_seed(5), 30)])
        assert report.passed, [r.to_dict() for r in report.failures]
        assert report.summary()["grid_mass"]["total"] == 1

    def test_grid_mass_skipped_when_exact(self, params_1d):
        """Exact d = 1 runs have the closed-form oracle instead."""
        suite = VerificationSuite(params_1d, oracle_points=0, decay_points=0, grid_spacing=0.05)
        assert "grid_mass" not in suite.run_seeds([0], 10).summary()

    def test_exact_rejected_in_two_dimensions(self, params_2d):
        """exact-1d cannot drive a d = 2 suite."""
        with pytest.raises(EstimatorError):
            VerificationSuite(params_2d, method=EstimatorMethod.exact_1d())

    def test_alpha_out_of_range(self, params_1d):
        """alpha at U V(R) / 2 is rejected up front."""
        with pytest.raises(ValidationError):
            VerificationSuite(params_1d, cfg=AlphaConfig(alpha=0.5))


class TestVerificationReport:
    """Tests for report bookkeeping."""

    def test_failures_and_summary(self):
        """Failed rows are counted per check, skips alongside."""
        report = VerificationReport()
        report.rows.append(CheckRow(0, 1, "decay", 0.0, 1e-12, 1e-12, True))
        report.rows.append(CheckRow(0, 2, "decay", 1.0, 1e-12, -1.0, False))
        report.skipped["constraint"] += 3
        assert not report.passed
        assert len(report.failures) == 1
        assert report.summary() == {
            "decay": {"total": 2, "failed": 1, "skipped": 0},
            "constraint": {"total": 0, "failed": 0, "skipped": 3},
        }

    def test_extend(self):
        """Reports merge rows and skip counts."""
        a, b = VerificationReport(), VerificationReport()
        a.skipped["constraint"] += 1
        b.skipped["constraint"] += 2
        b.rows.append(CheckRow(1, 0, "growth_bound", 0.0, 0.0, 0.0, True))
        a.extend(b)
        assert a.skipped["constraint"] == 3
        assert len(a.rows) == 1
