"""Exact D4 counting for corank-2 wave-front germs."""

__version__ = "0.1.0"
