"""Tests for principal bundle module deformations."""
