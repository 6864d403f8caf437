"""Exact homology of finite subset spaces of spheres and surfaces."""

from .intalg import AbelianGroup, IntegerMatrix, smith_normal_form
from .partitions import Composition, compositions, signed_binomial

__version__ = "0.1.0"

__all__ = ["AbelianGroup", "Composition", "IntegerMatrix", "compositions",
           "signed_binomial", "smith_normal_form"]
