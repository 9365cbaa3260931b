from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coquartic.errors import NestedExtension, ParseError
from coquartic.exactalg import QuadExtElem, as_rational, format_rational, parse_rational
from coquartic.exactalg.rational import rational_sqrt, squarefree_decomposition, squarefree_part_rational

rationals = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 10**6)
ds = st.sampled_from([-7, -3, -1, 2, 3, 5, 6, 10])


def test_parse_and_format_round_trip():
    for text in ["0", "7", "-3/4", "10/5"]:
        assert format_rational(parse_rational(text)) == format_rational(parse_rational(format_rational(parse_rational(text))))
    assert parse_rational("10/5") == 2 and isinstance(parse_rational("10/5"), int)
    assert format_rational(Fraction(-6, 8)) == "-3/4"


@pytest.mark.parametrize("bad", ["1/0", "abc", "1.5", ""])
def test_parse_rejects(bad):
    with pytest.raises(ParseError):
        parse_rational(bad)


def test_floats_are_not_rationals():
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_squarefree():
    assert squarefree_decomposition(-28) == (2, -7)
    assert squarefree_decomposition(72) == (6, 2)
    s, d = squarefree_part_rational(Fraction(-7, 4))
    assert d == -7 and s * s * d == Fraction(-7, 4)
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(2) is None


def test_quadext_basics():
    w = QuadExtElem(Fraction(1, 2), Fraction(1, 2), -7)
    assert w * w.conjugate() == 2
    assert w.norm() == 2 and w.trace() == 1
    assert w * w - w + 2 == 0
    assert QuadExtElem(3, 5, 1) == 8
    assert (w**-1) * w == 1


def test_quadext_mixed_fields():
    with pytest.raises(ValueError):
        QuadExtElem(0, 1, 2) + QuadExtElem(0, 1, 3)
    assert QuadExtElem(2, 0, 5) + QuadExtElem(0, 1, 3) == QuadExtElem(2, 1, 3)


def test_quadext_sqrt():
    x = QuadExtElem(1, 2, 2) ** 2
    r = x.sqrt()
    assert r * r == x
    with pytest.raises(NestedExtension):
        QuadExtElem(0, 1, 2).sqrt()


@given(rationals, rationals, rationals, rationals, ds)
def test_field_axioms(a, b, c, e, d):
    x, y = QuadExtElem(a, b, d), QuadExtElem(c, e, d)
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) * x == x * x + y * x
    assert (x * y).norm() == x.norm() * y.norm()
    if x != 0:
        assert (y / x) * x == y


@given(rationals, rationals, ds)
def test_to_mpc_matches_arithmetic(a, b, d):
    import mpmath

    x = QuadExtElem(a, b, d)
    with mpmath.workprec(200):
        assert abs((x * x).to_mpc() - x.to_mpc() ** 2) < mpmath.mpf(2) ** -150 * (1 + abs(x.to_mpc()) ** 2)
