"""Utility modules for the jet-poisson toolkit."""

from .budget import Budget, BudgetMeter
from .linalg import EchelonBasis, bareiss_rank, kernel

__all__ = ["Budget", "BudgetMeter", "EchelonBasis", "bareiss_rank", "kernel"]
