from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from coquartic.errors import PreconditionFailed
from coquartic.nslattice import (
    CO,
    IDENTITY,
    ONE,
    THETA,
    IsometryKind,
    LatticeContext,
    LatticeElement,
    LeeClass,
    all_eigenvalues_exceed_one,
    ample_square,
    dn_divisor,
    eigen,
    entropy,
    is_isometry,
    lattice_report,
    lee_classify,
    mult_matrix,
    pair,
    rr_h0,
)

E = LatticeElement


def test_co_gram():
    assert (pair(ONE, ONE), pair(ONE, THETA), pair(THETA, THETA)) == (4, 2, -4)
    assert CO.gram == ((4, 2), (2, -4))


def test_polarisation_squares():
    assert pair(E(1, 2), E(1, 2), LatticeContext(2, 2)) == 4
    assert pair(E(1, 3), E(1, 3), LatticeContext(2, 3)) == 4
    assert pair(E(2, 7), E(2, 7), LatticeContext(2, 3)) == -12


def test_mult_matrices():
    assert mult_matrix(CO, THETA).M == ((0, 1), (1, 1))
    assert mult_matrix(CO, THETA.power(6, CO)).M == ((5, 8), (8, 13))
    assert mult_matrix(CO, ONE) == IDENTITY
    assert mult_matrix(CO, THETA) ** 6 == mult_matrix(CO, THETA.power(6, CO))


@pytest.mark.parametrize("a", range(1, 21))
def test_theta_anti_isometry(a):
    ctx = LatticeContext(2, a)
    assert is_isometry(mult_matrix(ctx, THETA), ctx) == IsometryKind.ANTI_ISOMETRY
    assert is_isometry(mult_matrix(ctx, THETA.power(2, ctx)), ctx) == IsometryKind.ISOMETRY
    assert is_isometry(IDENTITY, ctx) == IsometryKind.ISOMETRY


def test_dn_divisors():
    assert dn_divisor(0) == E(1, 0)
    assert dn_divisor(1) == E(1, 1)
    assert dn_divisor(2) == E(2, 3)
    assert all(pair(dn_divisor(n), dn_divisor(n)) == 4 for n in range(-10, 11))
    with pytest.raises(PreconditionFailed):
        dn_divisor(1, LatticeContext(2, 2))


def test_entropy():
    assert entropy(IDENTITY) == 0
    g = mult_matrix(CO, THETA.power(6, CO))
    ev = eigen(g)
    assert (ev.trace, ev.det, ev.disc) == (18, 1, 320)
    assert abs(entropy(g) - float(mpmath.log(9 + 4 * mpmath.sqrt(5)))) < 1e-10
    assert abs(entropy(g) - 2.88727095) < 1e-8
    eta = mult_matrix(CO, THETA)
    with mpmath.workprec(128):
        assert abs(eigen(eta).spectral_radius() - (1 + mpmath.sqrt(5)) / 2) < 1e-30
    assert abs(6 * entropy(eta) - entropy(g)) < 1e-12
    assert not all_eigenvalues_exceed_one(g)


def test_lee():
    assert lee_classify(2, 1) == LeeClass.ANTI_SYMPLECTIC
    assert lee_classify(2, 2) == LeeClass.SYMPLECTIC
    assert lee_classify(2, 3) == LeeClass.ANTI_SYMPLECTIC


def test_ample_square_examples():
    assert ample_square(LatticeContext(2, 2), 1, 2).value == 4 and ample_square(LatticeContext(2, 2), 1, 2).positive
    assert ample_square(LatticeContext(2, 3), 1, 3).positive
    r = ample_square(LatticeContext(2, 1), 0, 1)
    assert r.value == -4 and not r.positive


@pytest.mark.parametrize("a", [1, 2, 3])
def test_ample_square_exhaustive(a):
    ctx = LatticeContext(2, a)
    for x in range(-50, 51):
        for y in range(-50, 51):
            assert ample_square(ctx, x, y).value == pair(E(x, y), E(x, y), ctx)


def test_riemann_roch():
    r = rr_h0(LatticeContext(2, 2), E(1, 1), E(1, 2))
    assert (r.gamma_h, r.gamma_sq, r.h_sq, r.degree_check, r.h0) == (8, 8, 4, -24, 28)
    assert r.bound_ok and not r.negative_square_warning
    r = rr_h0(LatticeContext(2, 3), E(2, 7), E(1, 3))
    assert (r.gamma_h, r.gamma_sq, r.h_sq, r.degree_check, r.h0) == (2, -12, 4, -20, 14)
    assert r.bound_ok and r.negative_square_warning
    assert isinstance(r.h0, (int, Fraction))
    with pytest.raises(PreconditionFailed):
        rr_h0(LatticeContext(2, 2), E(1, 1), E(1, 1))


def test_lattice_report_shape():
    rep = lattice_report(2, 1)
    assert rep["gram"] == [[4, 2], [2, -4]]
    assert len(rep["dn_table"]) == 21 and {row["square"] for row in rep["dn_table"]} == {4}
    assert rep["eigen"] == {"trace": 18, "det": 1, "disc": 320}
    assert "riemann_roch" in lattice_report(2, 3) and "dn_table" not in lattice_report(2, 3)
