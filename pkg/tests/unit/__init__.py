"""Unit tests for jet-poisson."""
