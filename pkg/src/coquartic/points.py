"""Projective points of P^3 over Q, Q(sqrt d) or high-precision C."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .exactalg.hp import to_mpc
from .exactalg.quadext import QuadExtElem
from .exactalg.rational import as_rational, normalize

RATIONAL = "rational"
QUADRATIC = "quadratic"
COMPLEX = "complex"


def _field_of(c) -> str:
    if isinstance(c, (mpmath.mpc, mpmath.mpf, complex, float)):
        return COMPLEX
    if isinstance(c, QuadExtElem):
        return RATIONAL if c.is_rational() else QUADRATIC
    return RATIONAL


def _canon(c, field: str):
    if field == COMPLEX:
        return to_mpc(c)
    if field == QUADRATIC:
        return c
    if isinstance(c, QuadExtElem):
        return c.to_rational()
    return as_rational(c)


class ProjectivePoint:
    """Four homogeneous coordinates, not all zero.

    Equality is projective for exact fields.  For complex points ``==`` is
    structural; use :func:`projective_distance` for numeric comparisons.
    """

    __slots__ = ("coords", "field")

    def __init__(self, coords: Iterable) -> None:
        cs = list(coords)
        if len(cs) != 4:
            raise ValueError(f"a point of P^3 needs 4 coordinates, got {len(cs)}")
        fields = {_field_of(c) for c in cs}
        field = COMPLEX if COMPLEX in fields else QUADRATIC if QUADRATIC in fields else RATIONAL
        cs = [_canon(c, field) for c in cs]
        if all(not c for c in cs):
            raise ValueError("all coordinates are zero")
        if field == QUADRATIC:
            ds = {c.d for c in cs if isinstance(c, QuadExtElem) and not c.is_rational()}
            if len(ds) > 1:
                raise ValueError(f"coordinates lie in different quadratic fields {sorted(ds)}")
            d = ds.pop()
            cs = [c if isinstance(c, QuadExtElem) else QuadExtElem(c, 0, d) for c in cs]
        self.coords = tuple(cs)
        self.field = field

    @property
    def is_exact(self) -> bool:
        return self.field != COMPLEX

    @property
    def d(self) -> int | None:
        if self.field != QUADRATIC:
            return None
        return next(c.d for c in self.coords if not c.is_rational())

    def normalized(self) -> ProjectivePoint:
        """First nonzero coordinate scaled to 1 (exact); unit max-norm (complex)."""
        if self.field == COMPLEX:
            with mpmath.workprec(carried_precision(self.coords)):
                return ProjectivePoint(max_normalize(self.coords))
        lead = next(c for c in self.coords if c)
        if self.field == RATIONAL:
            return ProjectivePoint(normalize(Fraction(c) / lead) for c in self.coords)
        inv = lead.inverse()
        return ProjectivePoint(c * inv for c in self.coords)

    def simplified(self) -> ProjectivePoint:
        """Drop to Q when every normalized coordinate is rational."""
        if self.field != QUADRATIC:
            return self
        return self.normalized()

    def to_complex(self, precision: int = 256) -> ProjectivePoint:
        with mpmath.workprec(precision):
            return ProjectivePoint(to_mpc(c) for c in self.coords)

    def sort_key(self) -> tuple:
        n = self.normalized().coords
        if self.field == COMPLEX:
            return tuple((c.real, c.imag) for c in n)
        if self.field == QUADRATIC:
            return tuple(c.sort_key() for c in n)
        return tuple(Fraction(c) for c in n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        if self.field == COMPLEX or other.field == COMPLEX:
            return self.field == other.field and self.coords == other.coords
        a, b = self.simplified().normalized(), other.simplified().normalized()
        return a.field == b.field and a.coords == b.coords

    def __hash__(self) -> int:
        if self.field == COMPLEX:
            return hash(self.coords)
        return hash(self.simplified().normalized().coords)

    def __getitem__(self, i: int):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self) -> str:
        if self.field == COMPLEX:
            inner = " : ".join(mpmath.nstr(c, 8) for c in self.coords)
        else:
            inner = " : ".join(str(c) for c in self.coords)
        return f"ProjectivePoint({inner})"


def carried_precision(coords: Sequence, floor: int = 64) -> int:
    """Largest mantissa width among complex coordinates, so rescaling loses nothing."""
    bits = floor
    for c in coords:
        if isinstance(c, mpmath.mpc):
            for part in c._mpc_:
                bits = max(bits, part[3])
    return bits


def max_normalize(coords: Sequence) -> list[mpmath.mpc]:
    cs = [to_mpc(c) for c in coords]
    big = max(cs, key=abs)
    if big == 0:
        raise ValueError("all coordinates are zero")
    return [c / big for c in cs]


def projective_distance(p, q, precision: int = 256) -> mpmath.mpf:
    """Chordal distance between the lines spanned by ``p`` and ``q`` (0 iff equal).

    Both representatives are scaled to unit length and phase-aligned before
    taking the norm of their difference, which stays accurate for tiny distances.
    """
    pc = p.coords if isinstance(p, ProjectivePoint) else p
    qc = q.coords if isinstance(q, ProjectivePoint) else q
    with mpmath.workprec(precision):
        a = [to_mpc(c) for c in pc]
        b = [to_mpc(c) for c in qc]
        na = mpmath.sqrt(sum(abs(c) ** 2 for c in a))
        nb = mpmath.sqrt(sum(abs(c) ** 2 for c in b))
        a = [c / na for c in a]
        b = [c / nb for c in b]
        inner = sum(mpmath.conj(y) * x for x, y in zip(a, b))
        if inner == 0:
            return mpmath.sqrt(2)
        phase = inner / abs(inner)
        return mpmath.sqrt(sum(abs(x - y * phase) ** 2 for x, y in zip(a, b)))
