"""Symbolic workbench for the K-theory shadow of quiver Hall algebras."""
from .algebra import AlgElement, Certificate, GradeError, HallAlgebra, Reduction
from .coeff import Laurent, RationalChar
from .parser import parse_expr
from .quiver import Quiver, ShiftTriple, jordan, parse_quiver, type_a
from .symbols import F, P2, UNIT

__all__ = [
    "AlgElement",
    "Certificate",
    "F",
    "GradeError",
    "HallAlgebra",
    "Laurent",
    "P2",
    "Quiver",
    "RationalChar",
    "Reduction",
    "ShiftTriple",
    "UNIT",
    "jordan",
    "parse_expr",
    "parse_quiver",
    "type_a",
]
