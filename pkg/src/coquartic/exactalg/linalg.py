"""Exact linear algebra over Q (row reduction, null spaces)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .rational import normalize


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list]:
    """Basis of {v : A v = 0} from the reduced row echelon form of A."""
    A = [[Fraction(c) for c in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][fc]
        basis.append([normalize(x) for x in v])
    return basis
