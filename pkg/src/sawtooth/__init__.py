"""Monotone Hurwitz numbers, HCIZ asymptotics and random lozenge tilings of sawtooth domains."""

__version__ = "0.1.0"
