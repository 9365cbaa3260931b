"""4x4 matrices over a commutative ring: determinant and adjugate by cofactors.

``det4`` and ``adjugate4`` only use ``+``, ``-`` and ``*`` so they work
unchanged for MultiPoly entries and for evaluated matrices over
Fraction, QuadExtElem or mpc.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .multipoly import MultiPoly

_PAIRS = list(combinations(range(4), 2))


def _minor2(M, r0: int, r1: int, c0: int, c1: int):
    return M[r0][c0] * M[r1][c1] - M[r0][c1] * M[r1][c0]


def det4(M: Sequence[Sequence]):
    """Laplace expansion along rows (0, 1) via complementary 2x2 minors."""
    total = None
    for c0, c1 in _PAIRS:
        d0, d1 = [c for c in range(4) if c not in (c0, c1)]
        sign = -1 if (c0 + c1 + 1) % 2 else 1
        term = _minor2(M, 0, 1, c0, c1) * _minor2(M, 2, 3, d0, d1)
        if sign < 0:
            term = -term
        total = term if total is None else total + term
    return total


def _det3(M, rows: Sequence[int], cols: Sequence[int], minors):
    # expansion along the first of ``rows`` using cached minors of the last two rows
    r, rest = rows[0], (rows[1], rows[2])
    a, b, c = cols
    return (
        M[r][a] * minors[rest, (b, c)]
        - M[r][b] * minors[rest, (a, c)]
        + M[r][c] * minors[rest, (a, b)]
    )


def cofactor_matrix(M: Sequence[Sequence]) -> list[list]:
    """C[i][j] = (-1)**(i+j) * det(M with row i and column j deleted)."""
    minors = {}
    for rp in _PAIRS:
        for cp in _PAIRS:
            minors[rp, cp] = _minor2(M, rp[0], rp[1], cp[0], cp[1])
    out = [[None] * 4 for _ in range(4)]
    for i in range(4):
        rows = [r for r in range(4) if r != i]
        for j in range(4):
            cols = [c for c in range(4) if c != j]
            val = _det3(M, rows, cols, minors)
            out[i][j] = -val if (i + j) % 2 else val
    return out


def adjugate4(M: Sequence[Sequence]) -> list[list]:
    """Classical adjugate, ``adj(M)[j][i] = C[i][j]``; satisfies M*adj(M) = det(M)*I."""
    C = cofactor_matrix(M)
    return [[C[i][j] for i in range(4)] for j in range(4)]


def cofactor_row(M: Sequence[Sequence], i: int) -> list:
    """Signed cofactors of the entries of row ``i`` (column ``i`` of the adjugate)."""
    rows = [r for r in range(4) if r != i]
    minors = {}
    rest = (rows[1], rows[2])
    for cp in _PAIRS:
        minors[rest, cp] = _minor2(M, rest[0], rest[1], cp[0], cp[1])
    out = []
    for j in range(4):
        cols = [c for c in range(4) if c != j]
        val = _det3(M, rows, cols, minors)
        out.append(-val if (i + j) % 2 else val)
    return out


def cofactor_col(M: Sequence[Sequence], j: int) -> list:
    """Signed cofactors of the entries of column ``j`` (row ``j`` of the adjugate)."""
    return cofactor_row(transpose(M), j)


def transpose(M: Sequence[Sequence]) -> list[list]:
    return [[M[r][c] for r in range(4)] for c in range(4)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = A[i][0] * B[0][j]
            for t in range(1, k):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


class PolyMatrix4:
    """Immutable 4x4 grid of MultiPoly entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]) -> None:
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ValueError("PolyMatrix4 needs a 4x4 grid")
        self.rows = tuple(
            tuple(e if isinstance(e, MultiPoly) else MultiPoly.constant(e) for e in r) for r in rows
        )

    @classmethod
    def identity(cls) -> PolyMatrix4:
        return cls([[1 if i == j else 0 for j in range(4)] for i in range(4)])

    @classmethod
    def diagonal(cls, entries: Sequence) -> PolyMatrix4:
        return cls([[entries[i] if i == j else 0 for j in range(4)] for i in range(4)])

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            return self.rows[idx[0]][idx[1]]
        return self.rows[idx]

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyMatrix4) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __matmul__(self, other: PolyMatrix4) -> PolyMatrix4:
        return PolyMatrix4(matmul(self.rows, other.rows))

    def __sub__(self, other: PolyMatrix4) -> PolyMatrix4:
        return PolyMatrix4([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def scale(self, p) -> PolyMatrix4:
        return PolyMatrix4([[e * p for e in r] for r in self.rows])

    def transpose(self) -> PolyMatrix4:
        return PolyMatrix4(transpose(self.rows))

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.rows for e in r)

    def is_linear(self) -> bool:
        return all(e.is_zero() or e.degrees() == {1} for r in self.rows for e in r)

    def det(self) -> MultiPoly:
        return det4(self.rows)

    def adjugate(self) -> PolyMatrix4:
        return PolyMatrix4(adjugate4(self.rows))

    def evaluate(self, point: Sequence, one=1) -> list[list]:
        return [[e.evaluate(point, one) for e in r] for r in self.rows]

    def __repr__(self) -> str:
        return "PolyMatrix4(" + repr([[str(e) for e in r] for r in self.rows]) + ")"
