"""Beauville's involution on unordered point pairs of a quartic surface.

A reduced pair spans a line meeting the quartic in two further points; the
involution swaps the pair for that residual pair.  Rational pairs are
handled exactly (residual points live in Q(sqrt d)); complex pairs
numerically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Sequence

import mpmath

from .cayley import FORWARD, REVERSE, KernelMapDescriptor, certify_all, inverse_descriptor, loop_map, phi
from .errors import CoincidentPoints, DegreeDrop, LineOnSurface, NotOnSurface
from .exactalg.hp import check_precision, roots_hp, to_mpc, tolerance
from .exactalg.quadext import QuadExtElem
from .exactalg.solve import solve_quadratic
from .exactalg.unipoly import UniPoly
from .points import COMPLEX, ProjectivePoint, max_normalize, projective_distance
from .rng import make_rng
from .tritensor import QuarticSurface, Tritensor, intersect_line, sample_points


def _exact_rank2(p: ProjectivePoint, q: ProjectivePoint) -> bool:
    a, b = p.coords, q.coords
    return any(a[i] * b[j] - a[j] * b[i] for i in range(4) for j in range(i + 1, 4))


class PointPair:
    """Unordered pair of projectively distinct points over one coordinate field."""

    __slots__ = ("first", "second")

    def __init__(self, p: ProjectivePoint, q: ProjectivePoint, precision: int = 256) -> None:
        if p.field == COMPLEX or q.field == COMPLEX:
            p, q = p.to_complex(precision) if p.is_exact else p, q.to_complex(precision) if q.is_exact else q
            if projective_distance(p, q, precision) <= tolerance(precision):
                raise CoincidentPoints("the two points coincide")
        else:
            p, q = p.simplified(), q.simplified()
            if not _exact_rank2(p, q):
                raise CoincidentPoints("the two points coincide")
        p, q = p.normalized(), q.normalized()
        if q.sort_key() < p.sort_key():
            p, q = q, p
        self.first, self.second = p, q

    @property
    def is_exact(self) -> bool:
        return self.first.is_exact and self.second.is_exact

    def __iter__(self):
        return iter((self.first, self.second))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointPair):
            return NotImplemented
        return (self.first, self.second) == (other.first, other.second)

    def __hash__(self) -> int:
        return hash((self.first, self.second))

    def __repr__(self) -> str:
        return f"PointPair({self.first!r}, {self.second!r})"


def pair_distance(u: PointPair, v: PointPair, precision: int = 256) -> mpmath.mpf:
    """Max point distance under the better of the two matchings."""
    d = lambda a, b: projective_distance(a, b, precision)  # noqa: E731
    straight = max(d(u.first, v.first), d(u.second, v.second))
    crossed = max(d(u.first, v.second), d(u.second, v.first))
    return min(straight, crossed)


@dataclass(frozen=True)
class ParamLine:
    """p(t) = A + tB with p(0) = first base point and p(1) = second."""

    A: tuple
    B: tuple

    def at(self, t) -> list:
        return [a + t * b for a, b in zip(self.A, self.B)]


def line_through(pair: PointPair | tuple) -> ParamLine:
    """p(t) = (1 - t) P + t Q; a plain tuple keeps its order, a PointPair its canonical one."""
    if isinstance(pair, PointPair):
        p, q = pair.first, pair.second
    else:
        p, q = pair
        PointPair(p, q)  # distinctness check
    A = p.coords
    B = tuple(b - a for a, b in zip(A, q.coords))
    return ParamLine(tuple(A), B)


def restrict(F: QuarticSurface, L: ParamLine) -> UniPoly:
    """F(A + tB); the zero polynomial exactly when the line lies on the surface."""
    return F.restrict(L.A, L.B)


_DEFLATOR = UniPoly([0, -1, 1])  # t(t - 1)


def _exact_residual(F: QuarticSurface, pair: PointPair) -> PointPair:
    P1, P2 = pair.first.coords, pair.second.coords
    for lam in (1, 2):
        # lam = 2 moves the chart's point at infinity off the surface
        L = ParamLine(tuple(P1), tuple(lam * b - a for a, b in zip(P1, P2)))
        q = restrict(F, L)
        if q.is_zero():
            raise LineOnSurface("the line through the pair lies on the quartic")
        if q.degree == 4:
            break
    else:
        raise DegreeDrop("residual point at infinity in both charts")
    quad, rem = q.divmod(_DEFLATOR)
    if not rem.is_zero():
        raise NotOnSurface("the pair does not lie on the quartic")
    r1, r2 = solve_quadratic(quad)
    if r1 == r2:
        raise CoincidentPoints("the residual pair is non-reduced (tangent line)")
    pts = [ProjectivePoint(L.at(r)).simplified() for r in (r1, r2)]
    return PointPair(*pts)


def _numeric_residual(F: QuarticSurface, pair: PointPair, bits: int) -> PointPair:
    with mpmath.workprec(bits):
        tol = tolerance(bits)
        P1 = max_normalize(pair.first.coords)
        P2 = max_normalize(pair.second.coords)
        for lam in (1, 2):
            L = ParamLine(tuple(P1), tuple(lam * b - a for a, b in zip(P1, P2)))
            q = restrict(F, L)
            if all(abs(c) <= tol * to_mpc(F.scale).real for c in q.coeffs):
                raise LineOnSurface("the line through the pair lies on the quartic")
            scale = sum(abs(c) for c in q.coeffs)
            if q.degree == 4 and abs(q.coeffs[4]) > tol * scale:
                break
        else:
            raise DegreeDrop("residual point at infinity in both charts")
        quad, _ = q.divmod(_DEFLATOR)
        roots = roots_hp(quad, bits)
        # polish against the undeflated restriction
        dq = q.derivative()
        polished = []
        for r in roots:
            for _ in range(3):
                der = dq(r)
                if der == 0:
                    break
                r = r - q(r) / der
            polished.append(r)
        pts = [ProjectivePoint(max_normalize(L.at(r))) for r in polished]
        return PointPair(*pts, precision=bits)


def involution(F: QuarticSurface, pair: PointPair, precision: int = 256) -> PointPair:
    """The residual pair of the line through ``pair``.

    Exact pairs stay exact (coordinates in Q(sqrt d)); complex pairs are
    solved at ``precision`` bits.
    """
    if pair.is_exact:
        for p in pair:
            if F(p):
                raise NotOnSurface(f"{p} is not on the quartic")
        return _exact_residual(F, pair)
    bits = check_precision(precision)
    for p in pair:
        if not F.on_surface(p, bits):
            raise NotOnSurface(f"{p} is not on the quartic")
    return _numeric_residual(F, pair, bits)


def conjugated_involution(
    T: Tritensor,
    edge: KernelMapDescriptor | None,
    pair: PointPair,
    precision: int = 256,
) -> PointPair:
    """Involution of quartic ``edge``-target transported to quartic 0 by the kernel map and its inverse.

    ``edge=None`` (or an edge with source and target 0) is the plain involution on quartic 0.
    """
    if edge is None:
        return involution(T.quartic(0), pair, precision)
    if edge.source != 0:
        raise ValueError("conjugation edges must start on quartic 0")
    back = inverse_descriptor(T, edge)
    S_l = T.quartic(back.source)
    pushed = PointPair(*(phi(T, edge, p, precision) for p in pair), precision=precision)
    swapped = involution(S_l, pushed, precision)
    return PointPair(*(phi(T, back, p, precision) for p in swapped), precision=precision)


def sample_pairs(S: QuarticSurface, seed: int, n: int, precision: int = 256) -> list[PointPair]:
    """``n`` pairs, each two points taken from one random integer line section."""
    bits = check_precision(precision)
    pairs: list[PointPair] = []
    rng = make_rng(seed, "pairs")
    attempt = 0
    while len(pairs) < n and attempt < 4 * n + 10:
        sub = int(rng.integers(0, 2**31))
        attempt += 1
        pts = sample_points(S, sub, 1, bits).points
        if len(pts) < 2:
            continue
        try:
            pairs.append(PointPair(pts[0], pts[1], precision=bits))
        except CoincidentPoints:
            continue
    return pairs


# -- composition experiment -----------------------------------------------


@dataclass
class CandidateResult:
    orientation: str
    order: tuple[int, int, int]
    max_mismatch: float
    per_seed: list[float]
    match: bool


@dataclass
class PropOgReport:
    status: str
    precision: int
    tolerance: float
    seeds: list[int]
    pairs_per_seed: int
    control_mismatch: float | None
    candidates: list[CandidateResult] = field(default_factory=list)
    matches: list[CandidateResult] = field(default_factory=list)
    edges: dict[int, str] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "precision": self.precision,
            "tolerance": self.tolerance,
            "seeds": self.seeds,
            "pairs_per_seed": self.pairs_per_seed,
            "control_mismatch": self.control_mismatch,
            "edges": {str(k): v for k, v in self.edges.items()},
            "candidates": [
                {
                    "orientation": c.orientation,
                    "order": list(c.order),
                    "max_mismatch": c.max_mismatch,
                    "per_seed": c.per_seed,
                    "match": c.match,
                }
                for c in self.candidates
            ],
            "matches": [{"orientation": c.orientation, "order": list(c.order)} for c in self.matches],
            "failures": self.failures,
        }


def _log2(x) -> float:
    return float(mpmath.log(x, 2)) if x > 0 else float("-inf")


def prop_og_experiment(
    T: Tritensor,
    seeds: Sequence[int] = (1, 2, 3, 4, 5),
    precision: int = 256,
    pairs_per_seed: int = 2,
) -> PropOgReport:
    """Compare the loop map's action on pairs with all orders of the three conjugated involutions.

    The composition ``order = (a, b, c)`` means apply involution c first, then
    b, then a.  A candidate matches when its mismatch stays below
    ``2**(-precision/4)`` for every seed.  Mismatches are reported as floats
    (not log2) so zero stays zero.
    """
    bits = check_precision(precision)
    tol = tolerance(bits, 4)
    certs = certify_all(T)
    report = PropOgReport("ok", bits, float(tol), list(seeds), pairs_per_seed, None)
    if any(c.ambiguous for c in certs.values()):
        report.status = "refused: ambiguous kernel-map certificates (non-generic tensor)"
        return report

    edges: dict[int, KernelMapDescriptor | None] = {0: None}
    for side in ("left", "right"):
        d = KernelMapDescriptor(0, side)
        edges[certs[0, side].target] = d
    report.edges = {l: (e.label() if e is not None else "identity") for l, e in edges.items()}

    maps: dict[str, Callable[[PointPair], PointPair]] = {}
    for l in (0, 1, 2):
        maps[f"i{l}"] = lambda pr, l=l: conjugated_involution(T, edges[l], pr, bits)
    loops = {o: loop_map(T, o) for o in (FORWARD, REVERSE)}

    orders = list(permutations((0, 1, 2)))
    per = {(o, order): [] for o in (FORWARD, REVERSE) for order in orders}
    control = mpmath.mpf(0)
    S0 = T.quartic(0)
    for seed in seeds:
        pairs = sample_pairs(S0, seed, pairs_per_seed, bits)
        worst = {key: mpmath.mpf(0) for key in per}
        for pr in pairs:
            try:
                images = {o: PointPair(*(loops[o](p, bits) for p in pr), precision=bits) for o in loops}
                once = maps["i0"](pr)
                control = max(control, pair_distance(maps["i0"](once), pr, bits))
                for order in orders:
                    a, b, c = order
                    comp = maps[f"i{a}"](maps[f"i{b}"](maps[f"i{c}"](pr)))
                    for o in loops:
                        worst[o, order] = max(worst[o, order], pair_distance(comp, images[o], bits))
            except Exception as exc:  # experiment: record and continue
                report.failures.append(f"seed {seed}: {type(exc).__name__}: {exc}")
        for key in per:
            per[key].append(float(worst[key]))
    report.control_mismatch = float(control)
    for (o, order), vals in per.items():
        m = max(vals) if vals else float("inf")
        cand = CandidateResult(o, order, m, vals, bool(vals) and m <= float(tol))
        report.candidates.append(cand)
        if cand.match:
            report.matches.append(cand)
    if not report.matches:
        report.status = "no match"
    return report
