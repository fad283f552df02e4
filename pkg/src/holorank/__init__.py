"""Rank-2 basis reduction for holographic-algorithm signatures, in exact arithmetic."""
from .linalg import Mat, complete_to_invertible, invert, kron, rank, right_inverse, solve_unique
from .scalar import Scalar, format_scalar, parse_scalar
from .signature import GENERATOR, RECOGNIZER, Signature

__all__ = [
    "GENERATOR",
    "RECOGNIZER",
    "Mat",
    "Scalar",
    "Signature",
    "complete_to_invertible",
    "format_scalar",
    "invert",
    "kron",
    "parse_scalar",
    "rank",
    "right_inverse",
    "solve_unique",
]
__version__ = "0.1.0"
