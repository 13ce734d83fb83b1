"""
Exception types raised by wishbound.
"""


class WishboundError(Exception):
    """Base class for all wishbound errors."""


class ConfigError(WishboundError, ValueError):
    """Invalid command-line flags, config files, grids or CSV inputs."""


class VariableMismatch(WishboundError, ValueError):
    """Two polynomials over different variable lists were combined."""


class BadLimit(WishboundError, ValueError):
    """An integration limit references the variable being integrated."""


class DivergentIntegral(WishboundError, ArithmeticError):
    """An integral to infinity met a term without exponential decay."""


class RationalExpUnsupported(WishboundError, ValueError):
    """Exact evaluation was asked for a term carrying an exponential."""


class ZeroPolynomial(WishboundError, ValueError):
    """The operation is undefined for the zero polynomial."""


class InvalidAlpha(WishboundError, ValueError):
    """A weight vector has negative entries or the wrong length."""


class AllZeroAlpha(InvalidAlpha):
    """Every weight is zero, so there is no p-index."""


class EnvelopeExceeded(WishboundError, ValueError):
    """The symbolic engines only support min(N, M) <= 4."""


class InsufficientPoints(WishboundError, ValueError):
    """A slope fit needs at least two finite positive points."""


class ConvergenceFailure(WishboundError, ArithmeticError):
    """The Jacobi eigensolver hit its sweep cap."""
