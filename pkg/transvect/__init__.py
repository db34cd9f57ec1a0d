"""Orbits of groups generated by transvections over the two-element field."""

__version__ = "1.0.0"
