"""Exact logarithmic derivation modules of central hyperplane arrangements."""

from .scalar import FieldContext, Scalar, parse_scalar

__version__ = "0.1.0"

__all__ = ["FieldContext", "Scalar", "parse_scalar", "__version__"]
