"""Cyclic 2-spreads of V(6,q), p > 3: spread-condition checkers, the cubic
families, equivalence classes and spread verification."""

from .gf import FieldElement, FieldTower, make_tower
from .poly import BiPoly, Poly, g_h_polys, is_irreducible, tilde
from .textfmt import parse_poly

__all__ = ["FieldElement", "FieldTower", "make_tower", "BiPoly", "Poly", "g_h_polys",
           "is_irreducible", "tilde", "parse_poly"]
__version__ = "0.1.0"
