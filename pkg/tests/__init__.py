"""Tests for pm6 simulation engine."""
