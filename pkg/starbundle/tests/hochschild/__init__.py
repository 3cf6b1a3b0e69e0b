"""Tests for the Hochschild complex and the coboundary solver."""
