"""Tests for the exact algebra substrate."""
