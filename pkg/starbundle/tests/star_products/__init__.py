"""Tests for star products and their checks."""
