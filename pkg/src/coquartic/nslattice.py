"""Rank-2 Neron-Severi lattice arithmetic for the surfaces S_{m,a}.

Elements ``x + y*theta`` with ``theta**2 = 1 + a*theta``; the intersection
form has Gram matrix ``m * [[2, a], [a, -2]]``.  For ``(m, a) = (2, 1)``,
theta is the golden-ratio unit eta.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import PreconditionFailed

Matrix2 = tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class LatticeContext:
    m: int = 2
    a: int = 1

    def __post_init__(self) -> None:
        if self.m < 2 or self.a < 1:
            raise ValueError(f"need m >= 2 and a >= 1, got (m, a) = ({self.m}, {self.a})")

    @property
    def gram(self) -> Matrix2:
        m, a = self.m, self.a
        return ((2 * m, a * m), (a * m, -2 * m))

    @property
    def det(self) -> int:
        return -self.m**2 * (4 + self.a**2)


CO = LatticeContext(2, 1)


@dataclass(frozen=True)
class LatticeElement:
    x: int
    y: int

    def __add__(self, other: LatticeElement) -> LatticeElement:
        return LatticeElement(self.x + other.x, self.y + other.y)

    def __sub__(self, other: LatticeElement) -> LatticeElement:
        return LatticeElement(self.x - other.x, self.y - other.y)

    def __neg__(self) -> LatticeElement:
        return LatticeElement(-self.x, -self.y)

    def mul(self, other: LatticeElement, ctx: LatticeContext) -> LatticeElement:
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        return LatticeElement(x1 * x2 + y1 * y2, x1 * y2 + x2 * y1 + ctx.a * y1 * y2)

    def power(self, n: int, ctx: LatticeContext) -> LatticeElement:
        if n < 0:
            raise ValueError("use dn_divisor / matrix inverse for negative powers")
        out, base = ONE, self
        while n:
            if n & 1:
                out = out.mul(base, ctx)
            base = base.mul(base, ctx)
            n >>= 1
        return out

    def __str__(self) -> str:
        return f"{self.x} + {self.y}θ"


ONE = LatticeElement(1, 0)
THETA = LatticeElement(0, 1)


def pair(u: LatticeElement, v: LatticeElement, ctx: LatticeContext = CO) -> int:
    G = ctx.gram
    return (
        u.x * (G[0][0] * v.x + G[0][1] * v.y)
        + u.y * (G[1][0] * v.x + G[1][1] * v.y)
    )


def _matmul(A: Matrix2, B: Matrix2) -> Matrix2:
    return (
        (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
        (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
    )


def _transpose(A: Matrix2) -> Matrix2:
    return ((A[0][0], A[1][0]), (A[0][1], A[1][1]))


@dataclass(frozen=True)
class LatticeEndo:
    """Integer 2x2 matrix acting on coordinate columns (x, y)."""

    M: Matrix2

    def __matmul__(self, other: LatticeEndo) -> LatticeEndo:
        return LatticeEndo(_matmul(self.M, other.M))

    def __pow__(self, n: int) -> LatticeEndo:
        if n < 0:
            return self.inverse() ** (-n)
        out, base = IDENTITY, self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def apply(self, u: LatticeElement) -> LatticeElement:
        (a, b), (c, d) = self.M
        return LatticeElement(a * u.x + b * u.y, c * u.x + d * u.y)

    @property
    def trace(self) -> int:
        return self.M[0][0] + self.M[1][1]

    @property
    def det(self) -> int:
        return self.M[0][0] * self.M[1][1] - self.M[0][1] * self.M[1][0]

    def inverse(self) -> LatticeEndo:
        if self.det not in (1, -1):
            raise ValueError(f"determinant {self.det} has no integer inverse")
        (a, b), (c, d) = self.M
        s = self.det
        return LatticeEndo(((d * s, -b * s), (-c * s, a * s)))


IDENTITY = LatticeEndo(((1, 0), (0, 1)))


def mult_matrix(ctx: LatticeContext, u: LatticeElement) -> LatticeEndo:
    """Matrix of v -> u*v in the basis (1, theta)."""
    col1 = u.mul(ONE, ctx)
    colt = u.mul(THETA, ctx)
    return LatticeEndo(((col1.x, colt.x), (col1.y, colt.y)))


class IsometryKind(str, enum.Enum):
    ISOMETRY = "isometry"
    ANTI_ISOMETRY = "anti-isometry"
    NEITHER = "neither"


def is_isometry(M: LatticeEndo, ctx: LatticeContext = CO) -> IsometryKind:
    G = ctx.gram
    pulled = _matmul(_transpose(M.M), _matmul(G, M.M))
    if pulled == G:
        return IsometryKind.ISOMETRY
    if pulled == tuple(tuple(-v for v in row) for row in G):
        return IsometryKind.ANTI_ISOMETRY
    return IsometryKind.NEITHER


def dn_divisor(n: int, ctx: LatticeContext = CO) -> LatticeElement:
    """The class eta**(2n); negative n through the integer inverse of multiplication by eta**2."""
    if ctx != CO:
        raise PreconditionFailed("D_n is defined for the (2, 1) lattice only")
    step = mult_matrix(ctx, THETA.power(2, ctx))
    return (step**n).apply(ONE)


@dataclass(frozen=True)
class Eigen:
    """Eigenvalues (trace ± sqrt(disc)) / 2 of a 2x2 integer matrix."""

    trace: int
    det: int

    @property
    def disc(self) -> int:
        return self.trace**2 - 4 * self.det

    def values(self, precision: int = 128) -> tuple[mpmath.mpc, mpmath.mpc]:
        with mpmath.workprec(precision):
            root = mpmath.sqrt(mpmath.mpc(self.disc))
            return (self.trace + root) / 2, (self.trace - root) / 2

    def spectral_radius(self, precision: int = 128) -> mpmath.mpf:
        with mpmath.workprec(precision):
            return max(abs(v) for v in self.values(precision))


def eigen(M: LatticeEndo) -> Eigen:
    return Eigen(M.trace, M.det)


def entropy(M: LatticeEndo, precision: int = 128) -> float:
    """log of the spectral radius (0 when every eigenvalue has modulus <= 1)."""
    with mpmath.workprec(precision):
        rho = eigen(M).spectral_radius(precision)
        return float(mpmath.log(rho)) if rho > 1 else 0.0


def all_eigenvalues_exceed_one(M: LatticeEndo) -> bool:
    """The stricter reading of positive entropy: every |eigenvalue| > 1."""
    return all(abs(v) > 1 for v in eigen(M).values())


class LeeClass(str, enum.Enum):
    SYMPLECTIC = "SymplecticGenerator"
    ANTI_SYMPLECTIC = "AntiSymplecticGenerator"
    BOTH = "Both"
    NEITHER = "Neither"


def lee_classify(m: int, a: int) -> LeeClass:
    """Generator type of Aut(S_{m,a}) from the two divisibility tests."""
    LatticeContext(m, a)
    symp = a % m == 0
    anti = (a * a + 1) % m == 0
    if symp and anti:
        return LeeClass.BOTH
    if symp:
        return LeeClass.SYMPLECTIC
    if anti:
        return LeeClass.ANTI_SYMPLECTIC
    return LeeClass.NEITHER


@dataclass(frozen=True)
class AmpleSquare:
    value: int
    x_positive: bool
    y_positive: bool
    square_positive: bool

    @property
    def positive(self) -> bool:
        return self.x_positive and self.y_positive and self.square_positive


def ample_square(ctx: LatticeContext, x: int, y: int) -> AmpleSquare:
    """C**2 for C = x + y*theta on the m = 2 lattice, cross-checked against the Gram form."""
    if ctx.m != 2:
        raise PreconditionFailed("the closed formula holds for m = 2")
    value = 4 * (x * x + ctx.a * x * y - y * y)
    gram = pair(LatticeElement(x, y), LatticeElement(x, y), ctx)
    if value != gram:
        raise AssertionError(f"closed form {value} disagrees with Gram value {gram}")
    return AmpleSquare(value, x > 0, y > 0, value > 0)


@dataclass(frozen=True)
class RiemannRoch:
    gamma_h: int
    gamma_sq: int
    h_sq: int
    degree_check: int
    h0: Fraction
    bound_ok: bool
    negative_square_warning: bool


H0_BOUND = 33


def rr_h0(ctx: LatticeContext, gamma: LatticeElement, H: LatticeElement) -> RiemannRoch:
    """h0(C, O_C(4)) = 4 Gamma.H - Gamma^2 / 2 for a quartic polarisation H.

    Requires H**2 = 4 and a negative degree for K_C(-4), i.e.
    Gamma**2 - 4 Gamma.H < 0.  ``negative_square_warning`` marks
    Gamma**2 < -2, where Gamma cannot be a smooth curve class of genus >= 0.
    """
    h_sq = pair(H, H, ctx)
    if h_sq != 4:
        raise PreconditionFailed(f"H^2 = {h_sq}, expected 4")
    gh = pair(gamma, H, ctx)
    gg = pair(gamma, gamma, ctx)
    degree_check = gg - 4 * gh
    if degree_check >= 0:
        raise PreconditionFailed(f"Gamma^2 - 4 Gamma.H = {degree_check} is not negative")
    h0 = Fraction(4 * gh) - Fraction(gg, 2)
    return RiemannRoch(gh, gg, h_sq, degree_check, h0, h0 <= H0_BOUND, gg < -2)


RR_CASES = {
    2: (LatticeElement(1, 1), LatticeElement(1, 2)),
    3: (LatticeElement(2, 7), LatticeElement(1, 3)),
}


def lattice_report(m: int = 2, a: int = 1, n_range: int = 10) -> dict:
    """Everything the lattice checks print, as plain JSON-ready data."""
    ctx = LatticeContext(m, a)
    report: dict = {
        "m": m,
        "a": a,
        "gram": [list(r) for r in ctx.gram],
        "gram_det": ctx.det,
        "pairs": {
            "1.1": pair(ONE, ONE, ctx),
            "1.theta": pair(ONE, THETA, ctx),
            "theta.theta": pair(THETA, THETA, ctx),
        },
        "classification": lee_classify(m, a).value,
        "theta_action": is_isometry(mult_matrix(ctx, THETA), ctx).value,
        "theta2_action": is_isometry(mult_matrix(ctx, THETA.power(2, ctx)), ctx).value,
    }
    if (m, a) == (2, 1):
        table = []
        for n in range(-n_range, n_range + 1):
            D = dn_divisor(n, ctx)
            table.append({"n": n, "x": D.x, "y": D.y, "square": pair(D, D, ctx)})
        report["dn_table"] = table
        g = mult_matrix(ctx, THETA.power(6, ctx))
        ev = eigen(g)
        report["generator_matrix"] = [list(r) for r in g.M]
        report["eigen"] = {"trace": ev.trace, "det": ev.det, "disc": ev.disc}
        report["entropy"] = f"{entropy(g):.15f}"
        report["all_eigenvalues_exceed_one"] = all_eigenvalues_exceed_one(g)
        report["entropy_definition_note"] = (
            "spectrum contains an eigenvalue of modulus < 1; entropy uses the spectral radius"
        )
    if m == 2 and a in RR_CASES:
        gamma, H = RR_CASES[a]
        rr = rr_h0(ctx, gamma, H)
        report["riemann_roch"] = {
            "gamma": [gamma.x, gamma.y],
            "H": [H.x, H.y],
            "H_sq": rr.h_sq,
            "gamma_H": rr.gamma_h,
            "gamma_sq": rr.gamma_sq,
            "degree_check": rr.degree_check,
            "h0": str(rr.h0),
            "bound": H0_BOUND,
            "bound_ok": rr.bound_ok,
            "negative_square_warning": rr.negative_square_warning,
        }
    return report
