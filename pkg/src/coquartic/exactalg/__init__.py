"""Exact and high-precision arithmetic kernel."""

from .hp import MIN_PRECISION, check_precision, residual_bound, roots_hp, to_mpc, tolerance
from .multipoly import MultiPoly, mv_divide, variables
from .polymatrix import PolyMatrix4, adjugate4, cofactor_col, cofactor_row, det4
from .quadext import QuadExtElem
from .rational import Rational, as_rational, format_rational, parse_rational
from .solve import quad_solve, solve_quadratic
from .unipoly import UniPoly

__all__ = [
    "MIN_PRECISION",
    "MultiPoly",
    "PolyMatrix4",
    "QuadExtElem",
    "Rational",
    "UniPoly",
    "adjugate4",
    "as_rational",
    "check_precision",
    "cofactor_col",
    "cofactor_row",
    "det4",
    "format_rational",
    "mv_divide",
    "parse_rational",
    "quad_solve",
    "residual_bound",
    "roots_hp",
    "solve_quadratic",
    "to_mpc",
    "tolerance",
    "variables",
]
