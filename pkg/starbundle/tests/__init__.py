"""Tests for the starbundle package."""
