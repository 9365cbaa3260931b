"""Exact roots of quadratics over Q and over Q(sqrt d)."""

from __future__ import annotations

from fractions import Fraction

from ..errors import DegreeMismatch
from .quadext import QuadExtElem
from .rational import as_rational, normalize, rational_sqrt, squarefree_part_rational
from .unipoly import UniPoly


def _lift(c, d: int = 1) -> QuadExtElem:
    return c if isinstance(c, QuadExtElem) else QuadExtElem(as_rational(c), 0, d)


def quad_solve(q: UniPoly) -> tuple[QuadExtElem, QuadExtElem]:
    """Both roots of a rational quadratic in Q(sqrt d), d the square-free part of the discriminant.

    A square discriminant gives rational roots, returned with ``d = 1``.
    """
    if q.degree != 2:
        raise DegreeMismatch(f"quad_solve needs degree 2, got {q.degree}")
    c, b, a = (as_rational(x) for x in q.coeffs)
    disc = normalize(b * b - 4 * a * c)
    two_a = Fraction(2 * a)
    root = rational_sqrt(disc) if disc >= 0 else None
    if root is not None:
        return (
            QuadExtElem(normalize((-b + root) / two_a), 0, 1),
            QuadExtElem(normalize((-b - root) / two_a), 0, 1),
        )
    s, d = squarefree_part_rational(disc)
    re = normalize(Fraction(-b) / two_a)
    im = normalize(Fraction(s) / two_a)
    return QuadExtElem(re, im, d), QuadExtElem(re, -im, d)


def solve_quadratic(q: UniPoly) -> tuple[QuadExtElem, QuadExtElem]:
    """Roots of a quadratic whose coefficients are rational or lie in one Q(sqrt d).

    Rational input defers to :func:`quad_solve`.  Otherwise the discriminant's
    square root must exist in the same field (``NestedExtension`` if not).
    """
    if q.degree != 2:
        raise DegreeMismatch(f"solve_quadratic needs degree 2, got {q.degree}")
    if all(not isinstance(c, QuadExtElem) or c.is_rational() for c in q.coeffs):
        return quad_solve(UniPoly([c.to_rational() if isinstance(c, QuadExtElem) else c for c in q.coeffs]))
    d = next(c.d for c in q.coeffs if isinstance(c, QuadExtElem) and not c.is_rational())
    c0, b, a = (_lift(x, d) for x in q.coeffs)
    disc = b * b - 4 * a * c0
    root = disc.sqrt()
    inv = (2 * a).inverse()
    return (-b + root) * inv, (-b - root) * inv
