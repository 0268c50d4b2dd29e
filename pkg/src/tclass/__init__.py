"""Exact arithmetic for t-class semigroups of valuation and Krull-type domains."""

from .groups import ArchComponent, ValueGroup, Z, Q, Zloc
from .cuts import Cut, CLOSED, OPEN

__version__ = "0.1.0"

__all__ = [
    "ArchComponent",
    "ValueGroup",
    "Z",
    "Q",
    "Zloc",
    "Cut",
    "CLOSED",
    "OPEN",
    "__version__",
]
