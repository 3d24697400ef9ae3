"""Distinct distances between point sets on two circles in 3-space."""

__version__ = "0.1.0"
