from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from coquartic.beauville import (
    PointPair,
    ParamLine,
    conjugated_involution,
    involution,
    line_through,
    pair_distance,
    prop_og_experiment,
    restrict,
    sample_pairs,
)
from coquartic.cayley import KernelMapDescriptor
from coquartic.errors import CoincidentPoints, LineOnSurface
from coquartic.exactalg import QuadExtElem, UniPoly, variables
from coquartic.points import ProjectivePoint
from coquartic.tritensor import QuarticSurface, Tritensor

x0, x1, x2, x3 = variables()
TOL100 = mpmath.mpf(2) ** -100
P = ProjectivePoint


def test_line_through():
    L = line_through((P([1, 0, 0, 0]), P([0, 1, 0, 0])))
    assert L.at(0) == [1, 0, 0, 0]
    assert P(L.at(1)) == P([0, 1, 0, 0])
    assert P(L.at(Fraction(1, 3))) == P([2, 1, 0, 0])  # (1 - t : t : 0 : 0)
    with pytest.raises(CoincidentPoints):
        PointPair(P([1, 2, 3, 4]), P([2, 4, 6, 8]))


def test_restriction_examples(fermat):
    assert restrict(fermat, ParamLine((0, 0, 1, 1), (1, 0, -1, 0))) == UniPoly([0, -4, 6, -4, 2])
    assert restrict(QuarticSurface(x0**4), ParamLine((0, 1, 0, 0), (0, 0, 1, 1))).is_zero()
    q = restrict(fermat, line_through(PointPair(P([0, 0, 1, 1]), P([1, 0, 0, 1]))))
    assert q(0) == 0 and q(1) == 0


def test_exact_fermat_involution(fermat):
    pr = PointPair(P([0, 0, 1, 1]), P([1, 0, 0, 1]))
    res = involution(fermat, pr)
    h, hb = QuadExtElem(Fraction(1, 2), Fraction(1, 2), -7), QuadExtElem(Fraction(1, 2), Fraction(-1, 2), -7)
    assert res == PointPair(P([h, 0, hb, 1]), P([hb, 0, h, 1]))
    assert res.first.d == -7
    assert all(fermat(p) == 0 for p in res)
    assert involution(fermat, res) == pr


def test_line_on_surface():
    S = QuarticSurface(x0 * x1 * x2 * x3)
    with pytest.raises(LineOnSurface):
        involution(S, PointPair(P([0, 1, 0, 0]), P([0, 0, 1, 0])))


def test_numeric_involution(tensor1):
    S = tensor1.quartic(0)
    pairs = sample_pairs(S, 3, 4)
    assert sample_pairs(S, 3, 4) == pairs
    for pr in pairs:
        res = involution(S, pr)
        assert all(S.residual(p) < TOL100 for p in res)
        assert pair_distance(involution(S, res), pr) < TOL100


def test_conjugated_involution(tensor1):
    S = tensor1.quartic(0)
    pr = sample_pairs(S, 5, 1)[0]
    assert conjugated_involution(tensor1, None, pr) == involution(S, pr)
    for side in ("left", "right"):
        edge = KernelMapDescriptor(0, side)
        once = conjugated_involution(tensor1, edge, pr)
        assert all(S.residual(p) < TOL100 for p in once)
        assert pair_distance(conjugated_involution(tensor1, edge, once), pr) < TOL100
    with pytest.raises(ValueError):
        conjugated_involution(tensor1, KernelMapDescriptor(1, "left"), pr)


def test_prop_og_small(tensor1):
    rep = prop_og_experiment(tensor1, seeds=(1,), pairs_per_seed=1)
    assert len(rep.candidates) == 12
    assert rep.control_mismatch < 2.0**-128
    found = {(c.orientation, c.order) for c in rep.matches}
    assert found == {("forward", (2, 0, 1)), ("reverse", (1, 0, 2))}
    data = rep.to_json()
    assert len(data["candidates"]) == 12 and not rep.failures


def test_prop_og_refuses_kronecker():
    rep = prop_og_experiment(Tritensor.kronecker(), seeds=(1,), pairs_per_seed=1)
    assert rep.status.startswith("refused") and not rep.candidates
