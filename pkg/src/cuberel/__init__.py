"""Reliability, percolation and isoperimetry on hypercube-like graphs."""

from .errors import CapacityError, CuberelError, IntegrityError, NumericalError, PreconditionError
from .graph import Graph

__all__ = [
    "CapacityError",
    "CuberelError",
    "Graph",
    "IntegrityError",
    "NumericalError",
    "PreconditionError",
]
__version__ = "0.1.0"
