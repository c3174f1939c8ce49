"""Tests for gofr_slfv package."""
