"""Exact analysis of Weyl-Heisenberg systems ``(g, a, b)`` with step-function windows."""
from .scalar import QComplex, IncommensurableError, set_tolerance, get_tolerance
from .stepfn import PeriodicStepFunction, StepFunction, chi, make

__version__ = "0.1.0"

__all__ = [
    "QComplex",
    "IncommensurableError",
    "set_tolerance",
    "get_tolerance",
    "StepFunction",
    "PeriodicStepFunction",
    "chi",
    "make",
]
