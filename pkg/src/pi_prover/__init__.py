"""Certified derivation and verification of alternating level-1 series for 1/pi."""

__version__ = "0.1.0"
