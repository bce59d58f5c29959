"""Jet schemes of affine Poisson schemes and their vertex Poisson structure."""

__version__ = "0.1.0"
