"""Dense univariate polynomials over an arbitrary coefficient field."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .rational import normalize


def _is_zero(c) -> bool:
    return not c


class UniPoly:
    """Coefficients stored low degree first; trailing zeros are stripped.

    The coefficient field is whatever the entries are: ints/Fractions,
    ``QuadExtElem`` or ``mpmath.mpc``.  Zero tests are exact.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()) -> None:
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_high(cls, coeffs: Sequence) -> UniPoly:
        return cls(list(coeffs)[::-1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    def __rmul__(self, other):
        return UniPoly([other * c for c in self.coeffs])

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, t):
        acc = 0 * t
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> UniPoly:
        return UniPoly([c * i for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, divisor: UniPoly) -> tuple[UniPoly, UniPoly]:
        """Long division; the divisor's leading coefficient must be invertible."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dn = divisor.degree
        lead = divisor.leading()
        inv = Fraction(1) / lead if isinstance(lead, int) else 1 / lead
        if len(rem) <= dn:
            return UniPoly(), UniPoly(rem)
        quot = [0] * (len(rem) - dn)
        for i in range(len(rem) - dn - 1, -1, -1):
            q = rem[i + dn] * inv
            if isinstance(q, Fraction):
                q = normalize(q)
            quot[i] = q
            for j, dc in enumerate(divisor.coeffs):
                rem[i + j] = rem[i + j] - q * dc
        return UniPoly(quot), UniPoly(rem[:dn])

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r})"
