"""Sparse polynomials in x0..x3 with exact rational coefficients.

Monomials are packed into a single int: the total degree occupies the top
field and the four exponents follow in 16-bit fields, so that monomial
multiplication is integer addition and integer comparison is graded
lexicographic order (x0 > x1 > x2 > x3).
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from ..errors import DivisionByZeroPolynomial, ParseError
from .rational import Rational, as_rational, format_rational, normalize, parse_rational

NVARS = 4
_BITS = 16
_MASK = (1 << _BITS) - 1
_DEG_SHIFT = NVARS * _BITS
_MAX_EXP = _MASK


def pack(exps: Sequence[int]) -> int:
    if len(exps) != NVARS:
        raise ValueError(f"expected {NVARS} exponents, got {len(exps)}")
    key = sum(exps) << _DEG_SHIFT
    for pos, e in enumerate(exps):
        if e < 0 or e > _MAX_EXP:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (_BITS * (NVARS - 1 - pos))
    return key


def unpack(key: int) -> tuple[int, int, int, int]:
    return (
        (key >> 48) & _MASK,
        (key >> 32) & _MASK,
        (key >> 16) & _MASK,
        key & _MASK,
    )


def _divides(small: int, big: int) -> bool:
    return all(a <= b for a, b in zip(unpack(small), unpack(big)))


class MultiPoly:
    """Immutable sparse polynomial; zero coefficients are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Sequence[int], object] | None = None) -> None:
        packed: dict[int, Rational] = {}
        if terms:
            for exps, coeff in terms.items():
                c = as_rational(coeff)
                if c:
                    k = pack(tuple(exps))
                    packed[k] = normalize(packed.get(k, 0) + c)
                    if not packed[k]:
                        del packed[k]
        self._terms = packed

    @classmethod
    def _from_packed(cls, terms: dict[int, Rational]) -> MultiPoly:
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls) -> MultiPoly:
        return cls._from_packed({})

    @classmethod
    def constant(cls, c) -> MultiPoly:
        c = as_rational(c)
        return cls._from_packed({0: c} if c else {})

    @classmethod
    def var(cls, i: int) -> MultiPoly:
        exps = [0] * NVARS
        exps[i] = 1
        return cls._from_packed({pack(exps): 1})

    @classmethod
    def linear_form(cls, coeffs: Sequence) -> MultiPoly:
        out: dict[int, Rational] = {}
        for i, c in enumerate(coeffs):
            c = as_rational(c)
            if c:
                exps = [0] * NVARS
                exps[i] = 1
                out[pack(exps)] = c
        return cls._from_packed(out)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def terms(self) -> list[tuple[tuple[int, int, int, int], Rational]]:
        """Terms in decreasing monomial order."""
        return [(unpack(k), self._terms[k]) for k in sorted(self._terms, reverse=True)]

    def __iter__(self) -> Iterator[tuple[tuple[int, int, int, int], Rational]]:
        return iter(self.terms())

    def coefficient(self, exps: Sequence[int]) -> Rational:
        return self._terms.get(pack(tuple(exps)), 0)

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(self._terms) >> _DEG_SHIFT

    def degrees(self) -> set[int]:
        return {k >> _DEG_SHIFT for k in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def leading_term(self) -> tuple[tuple[int, int, int, int], Rational]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        k = max(self._terms)
        return unpack(k), self._terms[k]

    def coefficient_scale(self) -> Rational:
        """Sum of absolute values of the coefficients."""
        return normalize(sum(abs(c) for c in self._terms.values()))

    def denominator_lcm(self) -> int:
        from math import lcm

        out = 1
        for c in self._terms.values():
            if isinstance(c, Fraction):
                out = lcm(out, c.denominator)
        return out

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            return other
        try:
            return MultiPoly.constant(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in o._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = normalize(v)
            else:
                out.pop(k, None)
        return MultiPoly._from_packed(out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._from_packed({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> MultiPoly:
        c = as_rational(c)
        if not c:
            return MultiPoly.zero()
        return MultiPoly._from_packed({k: normalize(v * c) for k, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, Rational] = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return MultiPoly._from_packed({k: normalize(v) for k, v in out.items() if v})

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise ValueError("negative power")
        result, base = MultiPoly.constant(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if not isinstance(other, MultiPoly) else other
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def diff(self, i: int) -> MultiPoly:
        shift = _BITS * (NVARS - 1 - i)
        unit = (1 << shift) + (1 << _DEG_SHIFT)
        out = {}
        for k, c in self._terms.items():
            e = (k >> shift) & _MASK
            if e:
                out[k - unit] = normalize(c * e)
        return MultiPoly._from_packed(out)

    def __call__(self, *values):
        if len(values) == 1 and isinstance(values[0], (list, tuple)):
            values = tuple(values[0])
        return self.evaluate(values)

    def evaluate(self, values: Sequence, one=1, coerce=None):
        """Evaluate at ``values`` over any commutative ring (Fraction, QuadExtElem, mpc, UniPoly...).

        ``one`` is the multiplicative identity of that ring; coefficients are
        passed through ``coerce`` (if given) and multiplied on the right.
        """
        if len(values) != NVARS:
            raise ValueError(f"expected {NVARS} values")
        powers: list[dict[int, object]] = [{0: one} for _ in range(NVARS)]

        def power(i: int, e: int):
            cache = powers[i]
            if e not in cache:
                best = max(j for j in cache if j < e)
                val = cache[best]
                for j in range(best + 1, e + 1):
                    val = val * values[i]
                    cache[j] = val
            return cache[e]

        total = None
        for k, c in self._terms.items():
            if coerce is not None:
                c = coerce(c)
            term = None
            for i, e in enumerate(unpack(k)):
                if e:
                    term = power(i, e) if term is None else term * power(i, e)
            term = one * c if term is None else term * c
            total = term if total is None else total + term
        if total is None:
            return one * 0
        return total

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.terms():
            mono = " ".join(f"x{i}^{e}" for i, e in enumerate(exps))
            parts.append(f"{format_rational(c)} {mono}")
        return " + ".join(parts)

    @classmethod
    def from_text(cls, text: str) -> MultiPoly:
        text = text.strip()
        if text == "0":
            return cls.zero()
        terms: dict[tuple[int, ...], Rational] = {}
        for chunk in text.split(" + "):
            fields = chunk.split()
            if len(fields) != NVARS + 1:
                raise ParseError(f"malformed term {chunk!r}")
            coeff = parse_rational(fields[0])
            exps = []
            for i, f in enumerate(fields[1:]):
                name, _, e = f.partition("^")
                if name != f"x{i}" or not e.isdigit():
                    raise ParseError(f"malformed monomial {f!r} in {chunk!r}")
                exps.append(int(e))
            key = tuple(exps)
            if key in terms:
                raise ParseError(f"repeated monomial {key}")
            terms[key] = coeff
        return cls(terms)

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text()!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for exps, c in self.terms():
            mono = "*".join(f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e)
            if not mono:
                out.append(format_rational(c))
            elif c == 1:
                out.append(mono)
            elif c == -1:
                out.append("-" + mono)
            else:
                out.append(f"{format_rational(c)}*{mono}")
        return " + ".join(out).replace("+ -", "- ")


def variables() -> tuple[MultiPoly, MultiPoly, MultiPoly, MultiPoly]:
    return tuple(MultiPoly.var(i) for i in range(NVARS))  # type: ignore[return-value]


def mv_divide(f: MultiPoly, g: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Divide ``f`` by ``g`` in graded-lex order; returns ``(q, r)`` with ``f = q*g + r``.

    No term of ``r`` is divisible by the leading monomial of ``g``, so
    ``r == 0`` exactly when ``g`` divides ``f``.
    """
    if g.is_zero():
        raise DivisionByZeroPolynomial("division by the zero polynomial")
    gt = g._terms
    lk = max(gt)
    lc = gt[lk]
    lc_inv = Fraction(1, 1) / lc
    tail = [(k - lk, c) for k, c in gt.items() if k != lk]

    work = dict(f._terms)
    heap = [-k for k in work]
    heapq.heapify(heap)
    quotient: dict[int, Rational] = {}
    remainder: dict[int, Rational] = {}
    while heap:
        k = -heapq.heappop(heap)
        c = work.pop(k, 0)
        if not c:
            continue
        # skip stale duplicates of the same key
        while heap and -heap[0] == k:
            heapq.heappop(heap)
        if k >= lk and _divides(lk, k):
            shift = k - lk
            qc = normalize(c * lc_inv)
            quotient[shift] = qc
            for dk, gc in tail:
                nk = shift + dk + lk
                v = work.get(nk, 0) - qc * gc
                if nk not in work:
                    heapq.heappush(heap, -nk)
                if v:
                    work[nk] = v
                else:
                    work[nk] = 0
        else:
            remainder[k] = normalize(c)
    return MultiPoly._from_packed(quotient), MultiPoly._from_packed(remainder)
