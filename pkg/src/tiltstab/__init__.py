"""Exact tools for tilt-stability bounds on threefold double and triple covers."""

from .exactnum import Scalar, parse_scalar

__version__ = "0.1.0"

__all__ = ["Scalar", "parse_scalar", "__version__"]
