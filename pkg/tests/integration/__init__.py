"""Integration tests for jet-poisson."""
