"""Tests for jet-poisson."""
