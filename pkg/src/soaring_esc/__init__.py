"""Extremum-seeking control of a dynamic-soaring glider."""

__version__ = "0.1.0"
