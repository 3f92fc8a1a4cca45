"""Exact computation of consecutive-pattern feasible regions for permutation classes."""

__version__ = "0.1.0"
