"""Exact Delsarte LP gate and proof pipeline for binary even-set codes."""

__version__ = "0.1.0"
