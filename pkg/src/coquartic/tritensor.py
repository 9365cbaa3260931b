"""The 4x4x4 tensor, its flattenings and contractions, and the three determinantal quartics."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, NamedTuple, Sequence

import mpmath

from .errors import DegenerateTensor, GenerationFailed, InconsistentConstraints, LineOnSurface
from .exactalg.hp import check_precision, roots_hp, to_mpc, tolerance
from .exactalg.linalg import nullspace
from .exactalg.multipoly import MultiPoly, variables
from .exactalg.polymatrix import PolyMatrix4
from .exactalg.rational import Rational, as_rational, format_rational, normalize, parse_rational
from .exactalg.unipoly import UniPoly
from .points import ProjectivePoint, max_normalize
from .rng import make_rng, rand_ints

log = logging.getLogger(__name__)

LEFT = "left"
RIGHT = "right"
SIDES = (LEFT, RIGHT)


def _other_axes(l: int) -> tuple[int, int]:
    if l not in (0, 1, 2):
        raise ValueError(f"contraction index must be 0, 1 or 2, got {l}")
    r, c = (ax for ax in (0, 1, 2) if ax != l)
    return r, c


def _index(l: int, a: int, r: int, c: int) -> tuple[int, int, int]:
    """Tensor index for contraction ``l``: summed index ``a``, matrix row ``r``, column ``c``."""
    ra, ca = _other_axes(l)
    idx = [0, 0, 0]
    idx[l], idx[ra], idx[ca] = a, r, c
    return idx[0], idx[1], idx[2]


@dataclass(frozen=True)
class FlatMatrix:
    """A 4x16 flattening: block ``b`` holds the slice with the ``axis`` index fixed to b."""

    entries: tuple[tuple[Rational, ...], ...]
    axis: int

    def entry(self, block: int, row: int, col: int) -> Rational:
        return self.entries[row][4 * block + col]

    def block(self, b: int) -> list[list[Rational]]:
        return [list(r[4 * b : 4 * b + 4]) for r in self.entries]

    def times_stacked(self) -> PolyMatrix4:
        """Product with the 16x4 matrix [x0 I; x1 I; x2 I; x3 I]."""
        xs = variables()
        rows = []
        for r in range(4):
            row = []
            for c in range(4):
                acc = MultiPoly.zero()
                for b in range(4):
                    acc = acc + xs[b] * self.entry(b, r, c)
                row.append(acc)
            rows.append(row)
        return PolyMatrix4(rows)


class Tritensor:
    """A nonzero 4x4x4 array of rationals ``m[i][j][k]``.

    Contractions and quartics are memoised on the instance; the tensor
    itself never changes after construction.
    """

    __slots__ = ("m", "_cache")

    def __init__(self, m: Sequence) -> None:
        if len(m) != 4:
            raise ValueError(f"axis 0 has length {len(m)}, expected 4")
        rows = []
        for i, slab in enumerate(m):
            if len(slab) != 4:
                raise ValueError(f"axis 1 has length {len(slab)} at i={i}, expected 4")
            mat = []
            for j, fibre in enumerate(slab):
                if len(fibre) != 4:
                    raise ValueError(f"axis 2 has length {len(fibre)} at (i,j)=({i},{j}), expected 4")
                mat.append(tuple(as_rational(v) for v in fibre))
            rows.append(tuple(mat))
        self.m = tuple(rows)
        if all(v == 0 for slab in self.m for fibre in slab for v in fibre):
            raise ValueError("the zero tensor is not allowed")
        self._cache: dict = {}

    @classmethod
    def from_function(cls, f) -> Tritensor:
        return cls([[[f(i, j, k) for k in range(4)] for j in range(4)] for i in range(4)])

    @classmethod
    def kronecker(cls) -> Tritensor:
        return cls.from_function(lambda i, j, k: int(i == j == k))

    def __getitem__(self, idx: tuple[int, int, int]) -> Rational:
        i, j, k = idx
        return self.m[i][j][k]

    def __eq__(self, other) -> bool:
        return isinstance(other, Tritensor) and self.m == other.m

    def __hash__(self) -> int:
        return hash(self.m)

    def __repr__(self) -> str:
        return f"Tritensor({[[[format_rational(v) for v in f] for f in s] for s in self.m]})"

    def to_json(self) -> dict:
        return {"m": [[[format_rational(v) for v in f] for f in s] for s in self.m]}

    @classmethod
    def from_json(cls, data: dict) -> Tritensor:
        return cls([[[parse_rational(str(v)) for v in f] for f in s] for s in data["m"]])

    def flatten(self, axis: int) -> FlatMatrix:
        r_ax, c_ax = _other_axes(axis)
        rows = []
        for r in range(4):
            row = []
            for b in range(4):
                for c in range(4):
                    idx = [0, 0, 0]
                    idx[axis], idx[r_ax], idx[c_ax] = b, r, c
                    row.append(self.m[idx[0]][idx[1]][idx[2]])
            rows.append(tuple(row))
        return FlatMatrix(tuple(rows), axis)

    def contract(self, l: int) -> PolyMatrix4:
        key = ("contract", l)
        if key not in self._cache:
            self._cache[key] = PolyMatrix4(self.contract_at(l, variables()))
        return self._cache[key]

    def contract_at(self, l: int, x: Sequence) -> list[list]:
        """T_l evaluated at coordinates ``x`` (rationals, QuadExtElem, mpc or MultiPoly)."""
        numeric = any(isinstance(v, (mpmath.mpc, mpmath.mpf)) for v in x)
        out = []
        for r in range(4):
            row = []
            for c in range(4):
                acc = None
                for a in range(4):
                    coef = self[_index(l, a, r, c)]
                    if not coef:
                        continue
                    term = x[a] * (to_mpc(coef) if numeric else coef)
                    acc = term if acc is None else acc + term
                if acc is None:
                    acc = x[0] * 0
                row.append(acc)
            out.append(row)
        return out

    def quartic_poly(self, l: int) -> MultiPoly:
        key = ("det", l)
        if key not in self._cache:
            self._cache[key] = self.contract(l).det()
        return self._cache[key]

    def quartic(self, l: int) -> QuarticSurface:
        F = self.quartic_poly(l)
        if F.is_zero():
            raise DegenerateTensor(f"det T_{l}(x) vanishes identically")
        return QuarticSurface(F, f"T{l}")

    @property
    def is_degenerate(self) -> bool:
        return any(self.quartic_poly(l).is_zero() for l in (0, 1, 2))


@dataclass(frozen=True)
class QuarticSurface:
    F: MultiPoly
    provenance: str = "external"
    _scale: Rational = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.F.degrees() != {4}:
            raise ValueError(f"quartic must be homogeneous of degree 4, got degrees {sorted(self.F.degrees())}")
        object.__setattr__(self, "_scale", self.F.coefficient_scale())

    @property
    def scale(self) -> Rational:
        return self._scale

    def __call__(self, p):
        coords = p.coords if isinstance(p, ProjectivePoint) else tuple(p)
        if any(isinstance(c, (mpmath.mpc, mpmath.mpf)) for c in coords):
            return self.F.evaluate([to_mpc(c) for c in coords], one=mpmath.mpc(1), coerce=to_mpc)
        return self.F.evaluate(list(coords))

    def contains_exact(self, p: ProjectivePoint) -> bool:
        return not self(p)

    def residual(self, p, precision: int = 256) -> mpmath.mpf:
        """|F(p)| / sum|coeffs| at the max-norm-normalised representative."""
        coords = p.coords if isinstance(p, ProjectivePoint) else tuple(p)
        with mpmath.workprec(precision):
            q = max_normalize(coords)
            return abs(self(q)) / to_mpc(self._scale).real

    def on_surface(self, p: ProjectivePoint, precision: int = 256, tol=None) -> bool:
        if p.is_exact:
            return self.contains_exact(p)
        with mpmath.workprec(precision):
            bound = tolerance(precision) if tol is None else tol
            return self.residual(p, precision) <= bound

    def gradient(self) -> tuple[MultiPoly, ...]:
        return tuple(self.F.diff(i) for i in range(4))

    def restrict(self, A: Sequence, B: Sequence) -> UniPoly:
        """F(A + tB) as a polynomial in t."""
        numeric = any(isinstance(c, (mpmath.mpc, mpmath.mpf)) for c in list(A) + list(B))
        if numeric:
            line = [UniPoly([to_mpc(a), to_mpc(b)]) for a, b in zip(A, B)]
            return self.F.evaluate(line, one=UniPoly([mpmath.mpc(1)]), coerce=to_mpc)
        line = [UniPoly([a, b]) for a, b in zip(A, B)]
        return self.F.evaluate(line, one=UniPoly([1]))


# -- generators ------------------------------------------------------------


def random_tritensor(seed: int, bound: int = 9, max_tries: int = 16) -> Tritensor:
    """Integer entries uniform in [-bound, bound]; retried until all three quartics are nonzero."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    for attempt in range(max_tries):
        rng = make_rng(seed, "tritensor", attempt)
        vals = rand_ints(rng, -bound, bound, 64)
        if not any(vals):
            continue
        T = Tritensor.from_function(lambda i, j, k: vals[16 * i + 4 * j + k])
        if not T.is_degenerate:
            return T
    raise GenerationFailed(f"no non-degenerate tensor for seed {seed} after {max_tries} tries")


class IncidenceConstraint(NamedTuple):
    """Forces ``T_l(x) y = 0`` (right) or ``y^T T_l(x) = 0`` (left)."""

    x: ProjectivePoint
    y: ProjectivePoint
    l: int
    side: str


def _constraint_rows(con: IncidenceConstraint) -> list[list[Rational]]:
    x = [as_rational(v) for v in con.x.coords]
    y = [as_rational(v) for v in con.y.coords]
    rows = []
    for fixed in range(4):
        eq = [0] * 64
        for a in range(4):
            for other in range(4):
                if con.side == RIGHT:
                    i, j, k = _index(con.l, a, fixed, other)
                else:
                    i, j, k = _index(con.l, a, other, fixed)
                eq[16 * i + 4 * j + k] += x[a] * y[other]
        rows.append(eq)
    return rows


def incidence_tritensor(
    seed: int,
    constraints: Iterable[IncidenceConstraint | tuple],
    bound: int = 9,
    max_tries: int = 16,
) -> Tritensor:
    """A tensor satisfying every kernel constraint, free directions filled from ``seed``.

    With no constraints this is :func:`random_tritensor`.  Entries are
    scaled to integers.
    """
    cons = [c if isinstance(c, IncidenceConstraint) else IncidenceConstraint(*c) for c in constraints]
    if not cons:
        return random_tritensor(seed, bound, max_tries)
    if len(cons) > 8:
        raise ValueError("at most 8 constraints are supported")
    rows: list[list[Rational]] = []
    for con in cons:
        if con.side not in SIDES:
            raise ValueError(f"side must be 'left' or 'right', got {con.side!r}")
        if not con.x.field == con.y.field == "rational":
            raise ValueError("incidence constraints need rational points")
        rows.extend(_constraint_rows(con))
    basis = nullspace(rows, 64)
    if not basis:
        raise InconsistentConstraints("the constraints force the zero tensor")
    for attempt in range(max_tries):
        rng = make_rng(seed, "incidence", attempt)
        weights = rand_ints(rng, -bound, bound, len(basis))
        vec = [sum(w * b[n] for w, b in zip(weights, basis)) for n in range(64)]
        den = lcm(*(Fraction(v).denominator for v in vec))
        vec = [normalize(v * den) for v in vec]
        if not any(vec):
            continue
        T = Tritensor.from_function(lambda i, j, k: vec[16 * i + 4 * j + k])
        if not T.is_degenerate:
            return T
    raise InconsistentConstraints(f"no non-degenerate solution after {max_tries} tries")


# -- numeric sampling ------------------------------------------------------


class LineIntersection(NamedTuple):
    params: list
    points: list[ProjectivePoint]


def intersect_line(S: QuarticSurface, A: Sequence, B: Sequence, precision: int = 256) -> LineIntersection:
    """Points of S on the line A + tB (the point B at t = infinity is not reported)."""
    bits = check_precision(precision)
    q = S.restrict(A, B)
    if q.is_zero():
        raise LineOnSurface(f"line {list(A)} + t {list(B)} lies on the surface")
    ts = roots_hp(q, bits)
    pts = []
    with mpmath.workprec(bits):
        for t in ts:
            pts.append(ProjectivePoint(max_normalize([to_mpc(a) + t * to_mpc(b) for a, b in zip(A, B)])))
    return LineIntersection(ts, pts)


class PointSample(NamedTuple):
    points: list[ProjectivePoint]
    lines_skipped: int
    lines: list[tuple[list[int], list[int]]]


def sample_points(S: QuarticSurface, seed: int, n: int, precision: int = 256, bound: int = 5) -> PointSample:
    """Intersect ``n`` random integer lines with S; up to 4n points."""
    bits = check_precision(precision)
    rng = make_rng(seed, "lines")
    points: list[ProjectivePoint] = []
    lines = []
    skipped = 0
    for _ in range(n):
        A = rand_ints(rng, -bound, bound, 4)
        B = rand_ints(rng, -bound, bound, 4)
        if not any(A) or not any(B):
            skipped += 1
            continue
        try:
            hit = intersect_line(S, A, B, bits)
        except LineOnSurface:
            log.warning("sample line %s + t%s lies on the surface; skipped", A, B)
            skipped += 1
            continue
        lines.append((A, B))
        points.extend(hit.points)
    return PointSample(points, skipped, lines)


@dataclass
class SmoothnessReport:
    n_points: int
    min_gradient_norm: float
    flagged: list[int]
    tolerance: float


def smoothness_probe(S: QuarticSurface, points: Sequence[ProjectivePoint], precision: int = 256, tol=None) -> SmoothnessReport:
    """Relative gradient norm at each point; points below ``tol`` are flagged as possibly singular."""
    grads = S.gradient()
    bits = check_precision(precision)
    with mpmath.workprec(bits):
        tol = tolerance(bits, 4) if tol is None else mpmath.mpf(tol)
        scale = to_mpc(S.scale).real
        norms = []
        for p in points:
            q = max_normalize(p.coords)
            g = [G.evaluate(q, one=mpmath.mpc(1), coerce=to_mpc) if not G.is_zero() else mpmath.mpc(0) for G in grads]
            norms.append(mpmath.sqrt(sum(abs(v) ** 2 for v in g)) / scale)
        flagged = [i for i, v in enumerate(norms) if v <= tol]
        return SmoothnessReport(
            n_points=len(points),
            min_gradient_norm=float(min(norms)) if norms else float("inf"),
            flagged=flagged,
            tolerance=float(tol),
        )
