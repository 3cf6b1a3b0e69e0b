"""Tests for the command-line interface and workspace files."""
