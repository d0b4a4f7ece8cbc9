"""Bounded law checking for monads, strengths and distributive laws."""

__version__ = "0.1.0"
