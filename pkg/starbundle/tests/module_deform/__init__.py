"""Tests for deformed projective modules."""
