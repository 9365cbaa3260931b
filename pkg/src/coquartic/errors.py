"""Exception hierarchy shared by every coquartic module."""

from __future__ import annotations


class CoQuarticError(Exception):
    """Base class for all errors raised by coquartic."""


class DivisionByZeroPolynomial(CoQuarticError, ZeroDivisionError):
    pass


class DegreeMismatch(CoQuarticError, ValueError):
    pass


class NestedExtension(CoQuarticError, ValueError):
    """A square root would leave the quadratic field Q(sqrt d)."""


class NonConvergence(CoQuarticError, ArithmeticError):
    pass


class DegenerateTensor(CoQuarticError, ValueError):
    pass


class GenerationFailed(CoQuarticError, RuntimeError):
    pass


class InconsistentConstraints(CoQuarticError, ValueError):
    pass


class LineOnSurface(CoQuarticError, ValueError):
    pass


class NotOnSurface(CoQuarticError, ValueError):
    pass


class KernelRankDeficient(CoQuarticError, ArithmeticError):
    pass


class NoDivisibleTarget(CoQuarticError, RuntimeError):
    pass


class NoInverseFound(CoQuarticError, RuntimeError):
    pass


class PrecisionExhausted(CoQuarticError, ArithmeticError):
    pass


class CoincidentPoints(CoQuarticError, ValueError):
    pass


class DegreeDrop(CoQuarticError, ArithmeticError):
    pass


class PreconditionFailed(CoQuarticError, ValueError):
    pass


class ParseError(CoQuarticError, ValueError):
    pass
