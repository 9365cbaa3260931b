from __future__ import annotations

import mpmath
import pytest

from coquartic.cayley import (
    ALL_DESCRIPTORS,
    EXPECTED_TARGETS,
    FORWARD,
    REVERSE,
    KernelMapDescriptor,
    certify_all,
    certify_map,
    composed_determinant,
    fixed_point_scan,
    identity_map,
    inverse_descriptor,
    inverse_pair_check,
    kernel_polys,
    loop_map,
    orbit,
    phi,
)
from coquartic.errors import NotOnSurface, PrecisionExhausted
from coquartic.exactalg import MultiPoly, variables
from coquartic.points import ProjectivePoint, projective_distance
from coquartic.rng import make_rng, rand_ints
from coquartic.tritensor import IncidenceConstraint, Tritensor, incidence_tritensor, sample_points

x0, x1, x2, x3 = variables()
TOL100 = mpmath.mpf(2) ** -100


@pytest.fixture(scope="module")
def incidence():
    pts = [
        (ProjectivePoint([1, 2, -1, 3]), ProjectivePoint([0, 1, 1, 2])),
        (ProjectivePoint([2, 0, 1, -1]), ProjectivePoint([1, -1, 0, 3])),
    ]
    T = incidence_tritensor(9, [IncidenceConstraint(x, y, 0, "right") for x, y in pts])
    return T, pts


def test_kernel_of_diagonal():
    Y = kernel_polys(Tritensor.kronecker(), KernelMapDescriptor(0, "right"))
    assert Y == (x1 * x2 * x3, MultiPoly.zero(), MultiPoly.zero(), MultiPoly.zero())


@pytest.mark.parametrize("d", ALL_DESCRIPTORS, ids=lambda d: d.label())
def test_kernel_identity(tensor1, d):
    M = tensor1.contract(d.source)
    det = M.det()
    for idx in range(4):
        Y = kernel_polys(tensor1, KernelMapDescriptor(d.source, d.side, idx))
        for n in range(4):
            if d.side == "right":
                val = sum((M.rows[n][c] * Y[c] for c in range(4)), MultiPoly.zero())
            else:
                val = sum((Y[r] * M.rows[r][n] for r in range(4)), MultiPoly.zero())
            assert val == (det if n == idx else MultiPoly.zero())


def test_kernel_vector_at_incidence_point(incidence):
    T, pts = incidence
    d = KernelMapDescriptor(0, "right")
    for x, y in pts:
        Y = [p.evaluate(x.coords) for p in kernel_polys(T, d)]
        if any(Y):
            assert ProjectivePoint(Y) == y


def test_certificates_and_evaluation_cross_check(tensor1):
    rng = make_rng(1, "cert-cross")
    for d in ALL_DESCRIPTORS:
        cert = certify_map(tensor1, d)
        assert not cert.ambiguous and cert.candidates == (cert.target,)
        assert cert.target == EXPECTED_TARGETS[d.source, d.side]
        assert cert.quotient.degrees() == {8}
        f = composed_determinant(tensor1, d, cert.target)
        g = tensor1.quartic_poly(d.source)
        for _ in range(50 if d == ALL_DESCRIPTORS[1] else 5):
            p = rand_ints(rng, -30, 30, 4)
            assert f.evaluate(p) == cert.quotient.evaluate(p) * g.evaluate(p)


def test_certificate_determinism(tensor1):
    d = KernelMapDescriptor(1, "left")
    a = certify_map.__wrapped__(tensor1, d)
    b = certify_map.__wrapped__(tensor1, d)
    assert a == b and a.to_json() == b.to_json()


def test_kronecker_is_ambiguous():
    K = Tritensor.kronecker()
    cert = certify_map(K, KernelMapDescriptor(0, "right"))
    assert cert.ambiguous and set(cert.candidates) == {1, 2}
    assert loop_map(K, FORWARD).ambiguous
    assert inverse_pair_check(K, KernelMapDescriptor(0, "right")).ambiguous


def test_inverse_descriptors(tensor1):
    labels = {d.label(): inverse_descriptor(tensor1, d).label() for d in ALL_DESCRIPTORS}
    assert labels == {"0L": "1L", "1L": "0L", "0R": "2L", "2L": "0R", "1R": "2R", "2R": "1R"}


def test_exact_images(incidence):
    T, pts = incidence
    fwd = KernelMapDescriptor(0, "right")
    back = inverse_descriptor(T, fwd)
    target = T.quartic(certify_map(T, fwd).target)
    for x, y in pts:
        img = phi(T, fwd, x)
        assert img == y
        assert target(img) == 0
        assert phi(T, back, img) == x
    off = next(ProjectivePoint(v) for v in ([1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 1, 1]) if T.quartic(0)(v))
    with pytest.raises(NotOnSurface):
        phi(T, fwd, off)


def test_numeric_image_residual(tensor1):
    pts = sample_points(tensor1.quartic(0), 2, 2).points
    for d in (KernelMapDescriptor(0, "left"), KernelMapDescriptor(0, "right")):
        S = tensor1.quartic(certify_map(tensor1, d).target)
        for p in pts:
            assert S.residual(phi(tensor1, d, p)) < mpmath.mpf(2) ** -128


def test_inverse_pair_check(tensor1, incidence):
    for d in ALL_DESCRIPTORS:
        v = inverse_pair_check(tensor1, d, n_lines=1, seed=3)
        assert v.ok and v.reverse == inverse_descriptor(tensor1, d)
        assert v.max_numeric_distance < 2.0**-128
    T, pts = incidence
    v = inverse_pair_check(T, KernelMapDescriptor(0, "right"), exact_points=[x for x, _ in pts], n_lines=1)
    assert v.ok and v.exact_ok and v.exact_points == 2


def test_loop_map(tensor1):
    psi = loop_map(tensor1, FORWARD)
    rev = loop_map(tensor1, REVERSE)
    assert [d.label() for d in psi.steps] == ["0L", "1R", "2L"]
    assert [d.label() for d in rev.steps] == ["0R", "2R", "1L"]
    assert psi.reversed() == rev
    S = tensor1.quartic(0)
    for p in sample_points(S, 4, 1).points:
        q = psi(p)
        assert S.residual(q) < TOL100
        assert projective_distance(rev(q), p) < TOL100


def test_orbit(tensor1):
    psi = loop_map(tensor1, FORWARD)
    p = sample_points(tensor1.quartic(0), 1, 1).points[0]
    assert len(orbit(psi, p, 0).points) == 1
    rep = orbit(psi, p, 8, 512, tol=TOL100)
    assert len(rep.points) == 9 and max(rep.residuals) < -100
    assert rep.min_return_distance > 1e-3  # generic tensors do not return
    assert orbit(psi, p, 3, 256).residuals == orbit(psi, p, 3, 256).residuals
    with pytest.raises(PrecisionExhausted):
        orbit(psi, p, 2, 64, tol=TOL100)


def test_fixed_point_scan(tensor1):
    psi = loop_map(tensor1, FORWARD)
    samples = sample_points(tensor1.quartic(0), 6, 3).points
    assert fixed_point_scan(identity_map, samples).min_distance == 0
    rep = fixed_point_scan(psi, samples)
    assert rep.n_samples == 12 and rep.min_distance > 0
    assert fixed_point_scan(psi, samples).distances == rep.distances
