"""Hilbert's 10th Problem over subrings of Q: enumerations, gadgets and semi-decision engines."""

__version__ = "0.1.0"
