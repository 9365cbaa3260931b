"""High-precision complex numerics on top of mpmath.

``mpmath.mpc`` is the HPComplex type.  Precision is always passed
explicitly and applied through ``mpmath.workprec`` so no caller inherits a
lower global setting.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import mpmath

from ..errors import NonConvergence
from .quadext import QuadExtElem
from .unipoly import UniPoly

MIN_PRECISION = 64


def check_precision(bits: int) -> int:
    bits = int(bits)
    if bits < MIN_PRECISION:
        raise ValueError(f"precision must be >= {MIN_PRECISION} bits, got {bits}")
    return bits


def to_mpc(value) -> mpmath.mpc:
    """Convert an exact or numeric scalar at the current working precision."""
    if isinstance(value, mpmath.mpc):
        return value
    if isinstance(value, QuadExtElem):
        return value.to_mpc()
    if isinstance(value, Fraction):
        return mpmath.mpc(mpmath.mpf(value.numerator) / value.denominator)
    return mpmath.mpc(value)


def tolerance(bits: int, fraction: int = 2) -> mpmath.mpf:
    """The residual tolerance 2**(-bits/fraction)."""
    return mpmath.ldexp(mpmath.mpf(1), -(bits // fraction))


def _poly_scale(coeffs: Sequence[mpmath.mpc], z: mpmath.mpc) -> mpmath.mpf:
    r = max(mpmath.mpf(1), abs(z))
    acc = mpmath.mpf(0)
    for i, c in enumerate(coeffs):
        acc += abs(c) * r**i
    return acc


def residual_bound(coeffs: Sequence, z, bits: int) -> mpmath.mpf:
    """Allowed |p(z)|: 2**(-bits/2) times sum |c_i| max(1,|z|)**i."""
    return tolerance(bits) * _poly_scale(coeffs, z)


def _horner(coeffs, z):
    p = mpmath.mpc(0)
    dp = mpmath.mpc(0)
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def roots_hp(p: UniPoly | Sequence, precision: int = 256, max_iter: int | None = None) -> list[mpmath.mpc]:
    """All complex roots of ``p`` (with multiplicity) by Aberth-Ehrlich iteration.

    ``p`` may be a UniPoly or a low-to-high coefficient sequence; exact
    coefficients are converted at the working precision.  Every returned root
    satisfies the residual bound of :func:`residual_bound`; otherwise
    ``NonConvergence`` is raised.
    """
    bits = check_precision(precision)
    raw = list(p.coeffs if isinstance(p, UniPoly) else p)
    with mpmath.workprec(bits):
        coeffs = [to_mpc(c) for c in raw]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        n = len(coeffs) - 1
        if n < 1:
            raise ValueError("roots_hp needs a polynomial of degree >= 1")
        # zero roots are exact; strip them first
        zeros = 0
        while coeffs[0] == 0:
            coeffs.pop(0)
            zeros += 1
        n = len(coeffs) - 1
        roots = [mpmath.mpc(0)] * zeros
        if n == 0:
            return roots
        if n == 1:
            return roots + [-coeffs[0] / coeffs[1]]

        lead = coeffs[-1]
        monic = [c / lead for c in coeffs]
        # Fujiwara-style radius for the initial circle
        radius = 2 * max(abs(monic[n - k]) ** (mpmath.mpf(1) / k) for k in range(1, n + 1))
        radius = max(radius, mpmath.mpf("1e-3"))
        offset = mpmath.mpf("0.4")
        z = [radius * mpmath.expj(2 * mpmath.pi * k / n + offset) for k in range(n)]

        budget = max_iter if max_iter is not None else 50 * n + 4 * bits
        step_tol = mpmath.ldexp(mpmath.mpf(1), -(bits - 8))
        done = [False] * n
        for _ in range(budget):
            moved = False
            for k in range(n):
                if done[k]:
                    continue
                val, der = _horner(monic, z[k])
                if val == 0:
                    done[k] = True
                    continue
                ratio = val / der if der != 0 else mpmath.mpc(radius)
                s = mpmath.mpc(0)
                for j in range(n):
                    if j != k:
                        diff = z[k] - z[j]
                        if diff != 0:
                            s += 1 / diff
                denom = 1 - ratio * s
                w = ratio / denom if denom != 0 else ratio
                z[k] = z[k] - w
                if abs(w) <= step_tol * max(mpmath.mpf(1), abs(z[k])):
                    done[k] = True
                else:
                    moved = True
            if not moved:
                break

        for k in range(n):
            val, _ = _horner(coeffs, z[k])
            if abs(val) > residual_bound(coeffs, z[k], bits):
                raise NonConvergence(
                    f"root {k} residual {mpmath.nstr(abs(val), 5)} above bound after {budget} iterations"
                )
        return roots + z
