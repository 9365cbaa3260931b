"""The ten acceptance criteria, one test each; every test prints a PASS/FAIL line."""

from __future__ import annotations

import json
import time
from fractions import Fraction

import mpmath
import pytest

from conftest import record_criterion, strip_timings
from coquartic.beauville import PointPair, involution, pair_distance, prop_og_experiment, sample_pairs
from coquartic.cayley import (
    ALL_DESCRIPTORS,
    FORWARD,
    REVERSE,
    KernelMapDescriptor,
    certify_map,
    inverse_descriptor,
    loop_map,
    orbit,
    phi,
)
from coquartic.exactalg import PolyMatrix4, QuadExtElem
from coquartic.harness.cli import main
from coquartic.nslattice import (
    CO,
    THETA,
    IsometryKind,
    LatticeContext,
    LatticeElement,
    LeeClass,
    dn_divisor,
    entropy,
    is_isometry,
    lee_classify,
    mult_matrix,
    pair,
    rr_h0,
)
from coquartic.points import ProjectivePoint, projective_distance
from coquartic.rng import make_rng, rand_ints
from coquartic.tritensor import IncidenceConstraint, incidence_tritensor, random_tritensor, sample_points

TOL100 = mpmath.mpf(2) ** -100
SEEDS20 = range(1, 21)


def _check(number, name, fn):
    try:
        ok, detail = fn()
    except Exception as exc:
        record_criterion(number, name, False, f"{type(exc).__name__}: {exc}")
        raise
    record_criterion(number, name, ok, detail)
    assert ok, detail


@pytest.fixture(scope="module")
def tensors20():
    return [random_tritensor(s, 9) for s in SEEDS20]


def test_c1_adjugate_identity(tensors20):
    def run():
        start = time.perf_counter()
        ok = True
        for T in tensors20:
            for l in range(3):
                M = T.contract(l)
                ident = PolyMatrix4.identity().scale(M.det())
                ok &= M @ M.adjugate() == ident
        elapsed = time.perf_counter() - start
        return ok and elapsed < 10, f"20 tensors x 3 contractions, exact, {elapsed:.1f}s"

    _check(1, "adjugate identity", run)


def test_c2_divisibility_certificates(tensors20):
    def run():
        start = time.perf_counter()
        triangles = set()
        ok = True
        for T in tensors20:
            tri = []
            for d in ALL_DESCRIPTORS:
                c = certify_map(T, d)
                ok &= len(c.candidates) == 1 and not c.ambiguous and c.quotient.degrees() == {8}
                tri.append((d.label(), c.target))
            triangles.add(tuple(tri))
        elapsed = time.perf_counter() - start
        ok &= len(triangles) == 1 and elapsed < 120
        return ok, f"pairing {dict(next(iter(triangles)))}, {len(triangles)} distinct, {elapsed:.1f}s"

    _check(2, "divisibility certificates", run)


def test_c3_inverse_pairing_exact():
    def run():
        checked = 0
        ok = True
        for seed in range(1, 6):
            rng = make_rng(seed, "acceptance-incidence")
            pts = []
            while len(pts) < 2:
                x, y = rand_ints(rng, -4, 4, 4), rand_ints(rng, -4, 4, 4)
                if any(x) and any(y):
                    pts.append((ProjectivePoint(x), ProjectivePoint(y)))
            for side in ("right", "left"):
                T = incidence_tritensor(seed, [IncidenceConstraint(x, y, 0, side) for x, y in pts])
                fwd = KernelMapDescriptor(0, side)
                back = inverse_descriptor(T, fwd)
                for x, y in pts:
                    img = phi(T, fwd, x)
                    ok &= img == y and phi(T, back, img) == x
                    checked += 1
        return ok, f"{checked} forced rational points round-trip with exact projective equality"

    _check(3, "inverse pairing", run)


def test_c4a_beauville_exact(fermat):
    def run():
        pr = PointPair(ProjectivePoint([0, 0, 1, 1]), ProjectivePoint([1, 0, 0, 1]))
        res = involution(fermat, pr)
        h = QuadExtElem(Fraction(1, 2), Fraction(1, 2), -7)
        hb = h.conjugate()
        expected = PointPair(ProjectivePoint([h, 0, hb, 1]), ProjectivePoint([hb, 0, h, 1]))
        back = involution(fermat, res)
        return res == expected and back == pr, "residual parameters (1 +/- sqrt(-7))/2; iota twice is the identity in Q(sqrt -7)"

    _check("4a", "Beauville involution, exact", run)


def test_c4b_beauville_numeric():
    def run():
        worst = mpmath.mpf(0)
        n = 0
        for seed in range(1, 6):
            S = random_tritensor(seed, 9).quartic(0)
            pairs = sample_pairs(S, seed, 100, 256)
            for pr in pairs:
                worst = max(worst, pair_distance(involution(S, involution(S, pr, 256), 256), pr, 256))
            n += len(pairs)
        return n == 500 and worst < TOL100, f"{n} pairs over 5 tensors, max distance 2^{float(mpmath.log(worst, 2)):.1f}"

    _check("4b", "Beauville involution, numeric", run)


def test_c5_loop_map():
    def run():
        worst_res = -float("inf")
        worst_rt = mpmath.mpf(0)
        for seed in range(1, 6):
            T = random_tritensor(seed, 9)
            psi, rev = loop_map(T, FORWARD), loop_map(T, REVERSE)
            start = sample_points(T.quartic(0), seed, 1, 256).points[0]
            rep = orbit(psi, start, 8, 256, tol=TOL100)
            worst_res = max(worst_res, max(rep.residuals))
            for p in rep.points[:-1]:
                worst_rt = max(worst_rt, projective_distance(rev(psi(p, 256, check=False), 256, check=False), p, 256))
        ok = worst_res < -100 and worst_rt < TOL100
        return ok, f"max residual 2^{worst_res:.1f}, max round trip 2^{float(mpmath.log(worst_rt, 2)):.1f}"

    _check(5, "loop map", run)


def test_c6_lattice_numbers():
    def run():
        gram = [[pair(u, v) for v in (LatticeElement(1, 0), THETA)] for u in (LatticeElement(1, 0), THETA)]
        ok = gram == [[4, 2], [2, -4]]
        ok &= all(pair(dn_divisor(n), dn_divisor(n)) == 4 for n in range(-10, 11))
        g = mult_matrix(CO, THETA.power(6, CO))
        ok &= g.M == ((5, 8), (8, 13))
        with mpmath.workprec(128):
            target = mpmath.log(9 + 4 * mpmath.sqrt(5))
        ok &= abs(entropy(g) - float(target)) < 1e-10
        for a in range(1, 21):
            ctx = LatticeContext(2, a)
            ok &= is_isometry(mult_matrix(ctx, THETA), ctx) == IsometryKind.ANTI_ISOMETRY
            ok &= is_isometry(mult_matrix(ctx, THETA.power(2, ctx)), ctx) == IsometryKind.ISOMETRY
        return ok, f"entropy {entropy(g):.10f}"

    _check(6, "lattice numbers", run)


def test_c7_lee_classification():
    def run():
        got = (lee_classify(2, 1), lee_classify(2, 2), lee_classify(2, 3))
        want = (LeeClass.ANTI_SYMPLECTIC, LeeClass.SYMPLECTIC, LeeClass.ANTI_SYMPLECTIC)
        return got == want, ", ".join(g.value for g in got)

    _check(7, "Lee classification", run)


def test_c8_riemann_roch():
    def run():
        a2 = rr_h0(LatticeContext(2, 2), LatticeElement(1, 1), LatticeElement(1, 2))
        a3 = rr_h0(LatticeContext(2, 3), LatticeElement(2, 7), LatticeElement(1, 3))
        ok = (a2.h_sq, a2.degree_check, a2.h0, a2.bound_ok) == (4, -24, 28, True)
        ok &= (a3.h_sq, a3.degree_check, a3.h0, a3.bound_ok) == (4, -20, 14, True)
        return ok, f"h0 = {a2.h0} and {a3.h0}, both <= 33"

    _check(8, "Riemann-Roch bound", run)


def test_c9_prop_og_experiment(tensor1):
    """Non-gating: the table must be complete; a missing or non-unique match is reported, not failed."""
    rep = prop_og_experiment(tensor1, seeds=(1, 2, 3, 4, 5), precision=256, pairs_per_seed=2)
    complete = len(rep.candidates) == 12 and all(len(c.per_seed) == 5 for c in rep.candidates)
    matches = [f"{c.orientation} {c.order}" for c in rep.matches]
    single = len(rep.matches) == 1
    detail = f"experiment, non-gating; matches: {matches or 'none'}; failures: {len(rep.failures)}"
    if not single:
        detail += "; expected exactly one match"
    record_criterion(9, "prop-og candidate table", single and complete, detail)
    assert complete, "candidate table incomplete"


def test_c10_determinism(capsys):
    def run():
        codes, outs = [], []
        for _ in range(2):
            codes.append(main(["suite", "--seed", "1"]))
            outs.append(capsys.readouterr().out)
        codes = tuple(codes)
        ra, rb = (strip_timings(json.loads(o)) for o in outs)
        same = json.dumps(ra, sort_keys=True) == json.dumps(rb, sort_keys=True)
        return same and codes == (0, 0), f"exit codes {codes}, reports identical modulo timings: {same}"

    _check(10, "determinism", run)
