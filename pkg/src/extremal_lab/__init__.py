"""Numerical lab for best rational approximation and condenser capacity in the unit disk."""

__version__ = "0.1.0"
