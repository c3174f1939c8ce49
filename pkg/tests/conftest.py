"""Shared fixtures for the gofr-slfv test suite."""

pytest_plugins = ["gofr_slfv.testing.pytest_fixtures"]
