"""Tilings of the sphere by congruent quadrangles over pseudo-double wheels."""

__version__ = "0.1.0"
