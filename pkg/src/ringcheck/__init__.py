"""Exact ring and module property checker over QQ and GF(p)."""

from .errors import ParseError, PreconditionError, RingcheckError, Verdict
from .poly import GF, QQ, Field, Poly, PolyRing
from .presentation import RingPresentation, polynomial_ring

__version__ = "0.1.0"

__all__ = [
    "Field", "GF", "ParseError", "Poly", "PolyRing", "PreconditionError", "QQ",
    "RingPresentation", "RingcheckError", "Verdict", "polynomial_ring", "__version__",
]
