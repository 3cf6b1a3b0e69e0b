"""Tests for reports and exceptions."""
