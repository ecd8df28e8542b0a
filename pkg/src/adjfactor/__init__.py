"""Bivariate polynomial factorization through adjoint polynomials."""

from .errors import AlgebraError
from .fields import GF, QQ, ExtField, parse_field
from .poly import UniPoly, inverse_mod, poly_gcd
from .bipoly import BiPoly, SeriesPoly, resultant_y
from .parse import parse_bipoly, parse_unipoly

__version__ = "0.1.0"

__all__ = ["AlgebraError", "GF", "QQ", "ExtField", "parse_field", "UniPoly", "inverse_mod", "poly_gcd",
           "BiPoly", "SeriesPoly", "resultant_y", "parse_bipoly", "parse_unipoly"]
