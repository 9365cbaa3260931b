"""Elements ``a + b*sqrt(d)`` of a quadratic extension of Q."""

from __future__ import annotations

from fractions import Fraction

import mpmath

from ..errors import NestedExtension
from .rational import Rational, as_rational, normalize, rational_sqrt, squarefree_part_rational


class QuadExtElem:
    """An element of Q(sqrt d) with square-free integer ``d``.

    Elements with ``b == 0`` are rational and combine with any field; mixing
    two irrational elements of different fields raises ``ValueError``.
    """

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, a, b=0, d: int = 1) -> None:
        a, b = as_rational(a), as_rational(b)
        if d == 0:
            raise ValueError("d must be nonzero")
        if d == 1:
            a, b = normalize(a + b), 0
        self._a, self._b, self._d = a, b, int(d)

    @property
    def a(self) -> Rational:
        return self._a

    @property
    def b(self) -> Rational:
        return self._b

    @property
    def d(self) -> int:
        return self._d

    def is_rational(self) -> bool:
        return self._b == 0

    def to_rational(self) -> Rational:
        if self._b != 0:
            raise ValueError(f"{self} is not rational")
        return self._a

    def conjugate(self) -> QuadExtElem:
        return QuadExtElem(self._a, -self._b, self._d)

    def norm(self) -> Rational:
        return normalize(self._a * self._a - self._d * self._b * self._b)

    def trace(self) -> Rational:
        return normalize(2 * self._a)

    def _common(self, other) -> tuple[QuadExtElem, int]:
        if not isinstance(other, QuadExtElem):
            other = QuadExtElem(as_rational(other), 0, self._d)
        if self._b == 0:
            return other, other._d
        if other._b == 0 or other._d == self._d:
            return other, self._d
        raise ValueError(f"mixed quadratic fields Q(sqrt {self._d}) and Q(sqrt {other._d})")

    def __add__(self, other):
        try:
            o, d = self._common(other)
        except TypeError:
            return NotImplemented
        return QuadExtElem(normalize(self._a + o._a), normalize(self._b + o._b), d)

    __radd__ = __add__

    def __neg__(self) -> QuadExtElem:
        return QuadExtElem(-self._a, -self._b, self._d)

    def __sub__(self, other):
        try:
            o, d = self._common(other)
        except TypeError:
            return NotImplemented
        return QuadExtElem(normalize(self._a - o._a), normalize(self._b - o._b), d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o, d = self._common(other)
        except TypeError:
            return NotImplemented
        a = self._a * o._a + d * self._b * o._b
        b = self._a * o._b + self._b * o._a
        return QuadExtElem(normalize(a), normalize(b), d)

    __rmul__ = __mul__

    def inverse(self) -> QuadExtElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return QuadExtElem(Fraction(self._a) / n, Fraction(-self._b) / n, self._d)

    def __truediv__(self, other):
        if not isinstance(other, QuadExtElem):
            other = QuadExtElem(as_rational(other), 0, self._d)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int) -> QuadExtElem:
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QuadExtElem(1, 0, self._d), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadExtElem):
            if self._b == 0 and other._b == 0:
                return self._a == other._a
            return (self._a, self._b, self._d) == (other._a, other._b, other._d)
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and self._a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b, self._d))

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    def sort_key(self) -> tuple:
        return (Fraction(self._a), Fraction(self._b))

    def sqrt(self) -> QuadExtElem:
        """Exact square root inside the same field.

        Raises ``NestedExtension`` when the root lies outside Q(sqrt d)
        (rational inputs may instead open the field Q(sqrt of their square-free part)).
        """
        a, b, d = self._a, self._b, self._d
        if b == 0:
            if a == 0:
                return QuadExtElem(0, 0, d)
            root = rational_sqrt(a)
            if root is not None:
                return QuadExtElem(root, 0, d)
            c, dd = squarefree_part_rational(a)
            if d != 1 and dd != d:
                raise NestedExtension(f"sqrt({a}) is not in Q(sqrt {d})")
            return QuadExtElem(0, c, dd)
        n = rational_sqrt(self.norm())
        if n is None:
            raise NestedExtension(f"sqrt({self}) is not in Q(sqrt {d})")
        for half in (Fraction(a + n, 2), Fraction(a - n, 2)):
            u = rational_sqrt(half)
            if u:
                return QuadExtElem(u, Fraction(b) / (2 * u), d)
            # u**2 = half may also hold as v**2 * d with u = 0 impossible when b != 0
        raise NestedExtension(f"sqrt({self}) is not in Q(sqrt {d})")

    def to_mpc(self) -> mpmath.mpc:
        a = mpmath.mpf(self._a.numerator) / self._a.denominator if isinstance(self._a, Fraction) else mpmath.mpf(self._a)
        if self._b == 0:
            return mpmath.mpc(a)
        b = mpmath.mpf(Fraction(self._b).numerator) / Fraction(self._b).denominator
        return mpmath.mpc(a) + b * mpmath.sqrt(mpmath.mpc(self._d))

    def __repr__(self) -> str:
        return f"QuadExtElem({self._a!r}, {self._b!r}, d={self._d})"

    def __str__(self) -> str:
        if self._b == 0:
            return str(self._a)
        return f"{self._a} + {self._b}*sqrt({self._d})"
