"""Tests for commutant lifting and the induced product."""
