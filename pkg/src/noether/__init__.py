"""Machine verification of rationality constructions for Noether's problem."""

__version__ = "0.1.0"
