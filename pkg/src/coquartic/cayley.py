"""Cofactor-kernel maps between the three quartics of a tensor.

A descriptor ``(source l, side, index)`` picks the kernel vector of
``T_l(x)`` given by signed cofactors: for ``side="right"`` the cofactors of
row ``index`` (so ``T_l(x) Y(x) = det T_l(x) e_index``), for ``side="left"``
those of column ``index``.  Which quartic the map lands on is established by
exact divisibility, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import mpmath

from .errors import KernelRankDeficient, NoDivisibleTarget, NoInverseFound, NotOnSurface, PrecisionExhausted
from .exactalg.hp import check_precision, to_mpc, tolerance
from .exactalg.multipoly import MultiPoly, mv_divide
from .exactalg.polymatrix import cofactor_col, cofactor_row, det4
from .points import COMPLEX, ProjectivePoint, max_normalize, projective_distance
from .tritensor import LEFT, RIGHT, SIDES, Tritensor, sample_points

FALLBACK = (0, 1, 2, 3)


@dataclass(frozen=True)
class KernelMapDescriptor:
    source: int
    side: str
    index: int = 0

    def __post_init__(self) -> None:
        if self.source not in (0, 1, 2):
            raise ValueError(f"source must be 0, 1 or 2, got {self.source}")
        if self.side not in SIDES:
            raise ValueError(f"side must be 'left' or 'right', got {self.side!r}")
        if self.index not in FALLBACK:
            raise ValueError(f"index must be in 0..3, got {self.index}")

    @property
    def fallback(self) -> tuple[int, ...]:
        return (self.index,) + tuple(i for i in FALLBACK if i != self.index)

    def label(self) -> str:
        return f"{self.source}{self.side[0].upper()}"


ALL_DESCRIPTORS = tuple(KernelMapDescriptor(l, s) for l in (0, 1, 2) for s in (LEFT, RIGHT))

# Targets certified on every generic tensor tried; the suite treats a change as a regression.
EXPECTED_TARGETS = {
    (0, LEFT): 1,
    (0, RIGHT): 2,
    (1, LEFT): 0,
    (1, RIGHT): 2,
    (2, LEFT): 0,
    (2, RIGHT): 1,
}


def _kernel_vector(M, side: str, index: int) -> list:
    return cofactor_row(M, index) if side == RIGHT else cofactor_col(M, index)


def kernel_polys(T: Tritensor, d: KernelMapDescriptor) -> tuple[MultiPoly, ...]:
    """The four cubic cofactor polynomials for ``d`` (raw, no common factor removed)."""
    return tuple(_kernel_vector(T.contract(d.source).rows, d.side, d.index))


@dataclass(frozen=True)
class MapCertificate:
    """det T_target(Y(x)) = quotient(x) * det T_source(x), checked exactly."""

    source: int
    side: str
    row: int
    target: int
    quotient: MultiPoly
    ambiguous: bool = False
    candidates: tuple[int, ...] = ()

    @property
    def descriptor(self) -> KernelMapDescriptor:
        return KernelMapDescriptor(self.source, self.side, self.row)

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "side": self.side,
            "row": self.row,
            "target": self.target,
            "quotient": self.quotient.to_text(),
            "ambiguous": self.ambiguous,
            "candidates": list(self.candidates),
        }


def composed_determinant(T: Tritensor, d: KernelMapDescriptor, target: int) -> MultiPoly:
    """det T_target(Y(x)) as a degree-12 polynomial."""
    Y = kernel_polys(T, d)
    return det4(T.contract_at(target, Y))


@lru_cache(maxsize=256)
def certify_map(T: Tritensor, d: KernelMapDescriptor) -> MapCertificate:
    """Find the quartic that ``d`` maps onto by exact division.

    Exactly one of the two other quartics should divide; when both do (e.g.
    the Kronecker tensor, where the composed determinant vanishes) the
    certificate is flagged ``ambiguous``.
    """
    src = T.quartic_poly(d.source)
    if src.is_zero():
        raise NoDivisibleTarget(f"source quartic {d.source} is identically zero")
    if all(p.is_zero() for p in kernel_polys(T, d)):
        raise NoDivisibleTarget(f"cofactors {d.label()} vanish identically")
    hits = {}
    for target in (0, 1, 2):
        if target == d.source:
            continue
        q, r = mv_divide(composed_determinant(T, d, target), src)
        if r.is_zero():
            hits[target] = q
    if not hits:
        raise NoDivisibleTarget(f"no quartic divides the composed determinant for {d.label()}")
    candidates = tuple(sorted(hits))
    target = candidates[0]
    quotient = hits[target]
    ambiguous = len(candidates) > 1 or quotient.is_zero() or quotient.degrees() != {8}
    return MapCertificate(d.source, d.side, d.index, target, quotient, ambiguous, candidates)


def certify_all(T: Tritensor) -> dict[tuple[int, str], MapCertificate]:
    return {(d.source, d.side): certify_map(T, d) for d in ALL_DESCRIPTORS}


def target_of(T: Tritensor, d: KernelMapDescriptor) -> int:
    return certify_map(T, KernelMapDescriptor(d.source, d.side)).target


def inverse_descriptor(T: Tritensor, d: KernelMapDescriptor) -> KernelMapDescriptor:
    """The descriptor on the target quartic whose certified target is ``d.source``."""
    tgt = target_of(T, d)
    back = [s for s in SIDES if certify_map(T, KernelMapDescriptor(tgt, s)).target == d.source]
    if len(back) != 1:
        raise NoInverseFound(f"{len(back)} candidate reverse maps for {d.label()}")
    return KernelMapDescriptor(tgt, back[0])


def _vector_norm(v) -> mpmath.mpf:
    return max(abs(c) for c in v)


def phi(
    T: Tritensor,
    d: KernelMapDescriptor,
    p: ProjectivePoint,
    precision: int = 256,
    check: bool = True,
    tol=None,
) -> ProjectivePoint:
    """Image of ``p`` under the kernel map ``d``.

    Exact points give exact images.  For complex points the cofactor vector
    is rejected as zero when it is below ``tol * |T_l(p)|^3`` and the next
    row/column in the fallback order is tried.
    """
    S = T.quartic(d.source)
    if check and not S.on_surface(p, precision, tol):
        raise NotOnSurface(f"point is not on quartic {d.source}")
    if p.field == COMPLEX:
        bits = check_precision(precision)
        with mpmath.workprec(bits):
            coords = max_normalize(p.coords)
            M = T.contract_at(d.source, coords)
            mnorm = max(abs(e) for r in M for e in r)
            zero_tol = (tolerance(bits) if tol is None else tol) * max(mnorm, mpmath.mpf(1)) ** 3
            for idx in d.fallback:
                Y = _kernel_vector(M, d.side, idx)
                if _vector_norm(Y) > zero_tol:
                    return ProjectivePoint(max_normalize(Y))
    else:
        M = T.contract_at(d.source, p.coords)
        for idx in d.fallback:
            Y = _kernel_vector(M, d.side, idx)
            if any(Y):
                return ProjectivePoint(Y).simplified()
    raise KernelRankDeficient(f"every cofactor vector of T_{d.source} vanishes at {p}")


@dataclass
class InverseVerdict:
    forward: KernelMapDescriptor
    reverse: KernelMapDescriptor | None
    exact_points: int
    exact_ok: bool
    numeric_points: int
    max_numeric_distance: float
    ambiguous: bool
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.reverse is not None and not self.ambiguous and self.exact_ok


def inverse_pair_check(
    T: Tritensor,
    d: KernelMapDescriptor,
    exact_points: Sequence[ProjectivePoint] = (),
    n_lines: int = 2,
    seed: int = 0,
    precision: int = 256,
) -> InverseVerdict:
    """Search the two descriptors on the target for one undoing ``d``.

    Exact points must round-trip exactly; sampled numeric points within
    ``2**(-precision/4)``.  Raises ``NoInverseFound`` when neither candidate works.
    """
    fwd = certify_map(T, KernelMapDescriptor(d.source, d.side))
    if fwd.ambiguous:
        return InverseVerdict(d, None, 0, False, 0, float("nan"), True, "forward certificate is ambiguous")
    numeric = sample_points(T.quartic(d.source), seed, n_lines, precision).points
    with mpmath.workprec(precision):
        tol = tolerance(precision, 4)
        results = []
        for side in SIDES:
            cand = KernelMapDescriptor(fwd.target, side)
            ok_exact = True
            for p in exact_points:
                try:
                    ok_exact &= phi(T, cand, phi(T, d, p)) == p
                except (KernelRankDeficient, NotOnSurface):
                    ok_exact = False
            worst = mpmath.mpf(0)
            for p in numeric:
                try:
                    back = phi(T, cand, phi(T, d, p, precision), precision)
                    worst = max(worst, projective_distance(back, p, precision))
                except (KernelRankDeficient, NotOnSurface):
                    worst = mpmath.inf
            results.append((cand, ok_exact, worst))
        good = [r for r in results if r[1] and r[2] <= tol]
    if not good:
        raise NoInverseFound(f"no reverse map undoes {d.label()}")
    cand, ok_exact, worst = good[0]
    return InverseVerdict(d, cand, len(exact_points), ok_exact, len(numeric), float(worst), len(good) > 1)


FORWARD = "forward"
REVERSE = "reverse"


@dataclass(frozen=True)
class LoopMap:
    """Self-map of quartic 0 through the triangle 0 -> a -> b -> 0 of kernel maps.

    ``forward`` runs 0 -> 1 -> 2 -> 0 and ``reverse`` 0 -> 2 -> 1 -> 0.
    """

    tensor: Tritensor
    orientation: str
    steps: tuple[KernelMapDescriptor, ...]
    ambiguous: bool = False

    def __call__(self, p: ProjectivePoint, precision: int = 256, check: bool = True) -> ProjectivePoint:
        for d in self.steps:
            p = phi(self.tensor, d, p, precision, check=check)
        return p

    def reversed(self) -> LoopMap:
        return loop_map(self.tensor, REVERSE if self.orientation == FORWARD else FORWARD)


def loop_map(T: Tritensor, orientation: str = FORWARD) -> LoopMap:
    if orientation not in (FORWARD, REVERSE):
        raise ValueError(f"orientation must be 'forward' or 'reverse', got {orientation!r}")
    path = (0, 1, 2, 0) if orientation == FORWARD else (0, 2, 1, 0)
    certs = certify_all(T)
    steps = []
    ambiguous = any(c.ambiguous for c in certs.values())
    for a, b in zip(path, path[1:]):
        sides = [s for s in SIDES if b in certs[a, s].candidates]
        if not sides:
            raise NoDivisibleTarget(f"no kernel map from quartic {a} to quartic {b}")
        ambiguous |= len(sides) > 1
        steps.append(KernelMapDescriptor(a, sides[0]))
    return LoopMap(T, orientation, tuple(steps), ambiguous)


def identity_map(p: ProjectivePoint, precision: int = 256, check: bool = True) -> ProjectivePoint:
    return p


@dataclass
class OrbitReport:
    points: list[ProjectivePoint]
    residuals: list[float]
    return_distances: list[float]
    tolerance: float

    @property
    def max_residual(self) -> float:
        return max(self.residuals) if self.residuals else 0.0

    @property
    def min_return_distance(self) -> float:
        return min(self.return_distances) if self.return_distances else float("inf")


def _log2(x) -> float:
    return float(mpmath.log(x, 2)) if x > 0 else float("-inf")


def orbit(psi, p: ProjectivePoint, n: int, precision: int = 256, tol=None, surface=None) -> OrbitReport:
    """Iterate ``psi`` n times from ``p``; residuals are reported as log2 values.

    Raises ``PrecisionExhausted`` as soon as an iterate leaves quartic 0 by
    more than ``tol`` (default ``2**(-precision/2)``).
    """
    bits = check_precision(precision)
    S = surface if surface is not None else psi.tensor.quartic(0)
    with mpmath.workprec(bits):
        tol = tolerance(bits) if tol is None else mpmath.mpf(tol)
        pts = [ProjectivePoint(max_normalize(p.coords))]
        residuals = [_log2(S.residual(pts[0], bits))]
        dists = []
        for step in range(n):
            q = psi(pts[-1], bits, check=False)
            res = S.residual(q, bits)
            if res > tol:
                raise PrecisionExhausted(
                    f"orbit step {step + 1}: residual 2^{_log2(res):.1f} exceeds 2^{_log2(tol):.1f}"
                )
            pts.append(q)
            residuals.append(_log2(res))
            dists.append(float(projective_distance(q, pts[0], bits)))
        return OrbitReport(pts, residuals, dists, float(tol))


@dataclass
class FixedPointReport:
    n_samples: int
    min_distance: float
    distances: list[float] = field(repr=False)


def fixed_point_scan(psi, samples: Sequence[ProjectivePoint], precision: int = 256) -> FixedPointReport:
    """Minimum of d(p, psi(p)) over the samples; evidence only, no threshold applied."""
    bits = check_precision(precision)
    dists = [float(projective_distance(p, psi(p, bits, check=False), bits)) for p in samples]
    return FixedPointReport(len(dists), min(dists) if dists else float("inf"), dists)
