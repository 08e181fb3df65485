"""Rational classification checks and integral invariants for biquotients
whose rational cohomology is generated by a single class."""

from .lie_catalog import GroupCatalog, SimpleGroup, group_dimension, load_catalog, sphere_dimensions
from .rational_model import RationalType, minimal_model, odd_sphere, rational_balance, truncated

__version__ = "0.1.0"

__all__ = [
    "GroupCatalog",
    "SimpleGroup",
    "RationalType",
    "group_dimension",
    "load_catalog",
    "minimal_model",
    "odd_sphere",
    "rational_balance",
    "sphere_dimensions",
    "truncated",
]
