"""Quiver Hecke algebras with loops: presentation, polynomial and fixed-point models."""
from .quiver import (BorcherdsCartanDatum, Quiver, QuiverParseError, RootVector, derive_datum,
                     load_quiver, parse_quiver)
from .presentation import KLRAlgebra
from .polrep import PolynomialRep
from .fixedpoint import FixedPointModel
from .gradeddim import poincare_series, verify_series
from .cyclotomic import DominantWeight, cyclotomic_dims

__all__ = [
    "BorcherdsCartanDatum", "Quiver", "QuiverParseError", "RootVector", "derive_datum",
    "load_quiver", "parse_quiver", "KLRAlgebra", "PolynomialRep", "FixedPointModel",
    "poincare_series", "verify_series", "DominantWeight", "cyclotomic_dims",
]
