"""Exact kernel for Gelfand-Tsetlin tableau formulas and the distribution
modules attached to singular character points."""

__version__ = "0.1.0"
