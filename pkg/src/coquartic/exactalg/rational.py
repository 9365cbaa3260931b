"""Exact rationals.

``fractions.Fraction`` already keeps ``gcd(|p|, q) = 1`` with ``q > 0``; the
helpers here add the canonical form used throughout the package (integral
values are stored as plain ``int`` for speed), text I/O, and a few square
tests used by the quadratic-field code.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _Rational
from typing import Union

from ..errors import ParseError

Rational = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def as_rational(value) -> Rational:
    """Coerce ``value`` to the canonical exact form; floats are rejected."""
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, _Rational):
        return as_rational(Fraction(value.numerator, value.denominator))
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def normalize(value: Rational) -> Rational:
    if type(value) is Fraction and value.denominator == 1:
        return value.numerator
    return value


def parse_rational(text: str) -> Rational:
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ParseError(f"malformed rational {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return normalize(Fraction(num, den))


def format_rational(value: Rational) -> str:
    value = normalize(value)
    if isinstance(value, int):
        return str(value)
    return f"{value.numerator}/{value.denominator}"


def is_square_int(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def rational_sqrt(value: Rational) -> Rational | None:
    """Exact square root of a non-negative rational, or None."""
    value = Fraction(value)
    p, q = value.numerator, value.denominator
    if p < 0 or not is_square_int(p) or not is_square_int(q):
        return None
    return normalize(Fraction(math.isqrt(p), math.isqrt(q)))


@lru_cache(maxsize=1024)
def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n = s**2 * d`` and ``d`` square-free (sign kept in d)."""
    if n == 0:
        return 0, 0
    from sympy import factorint

    sign = -1 if n < 0 else 1
    s, d = 1, sign
    for p, e in factorint(abs(n)).items():
        s *= p ** (e // 2)
        if e % 2:
            d *= p
    return s, d


def squarefree_part_rational(value: Rational) -> tuple[Rational, int]:
    """Write a nonzero rational as ``c**2 * d`` with integer square-free ``d``."""
    value = Fraction(value)
    # p/q = p*q / q**2
    s, d = squarefree_decomposition(value.numerator * value.denominator)
    return normalize(Fraction(s, value.denominator)), d
