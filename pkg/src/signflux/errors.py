"""Exception types shared across the package.

Every error raised by library code derives from SignfluxError so the CLI
can map any of them to a configuration/usage exit status.
"""


class SignfluxError(Exception):
    """Base class for all errors raised by this package."""


class InvalidLimit(SignfluxError):
    """A table limit of zero (or otherwise unusable) was requested."""


class OverflowRisk(SignfluxError):
    """Requested limit exceeds the certified exact-arithmetic bound."""


class MissingPrime(SignfluxError):
    """A Hecke extension was seeded without a(p) for some prime p <= N."""


class OutOfRange(SignfluxError):
    """An index or window falls outside the constructed tables."""


class LimitMismatch(SignfluxError):
    """Two tables that must share a limit do not."""


class InsufficientData(SignfluxError):
    """Not enough checkpoints/windows for a regression or estimate."""


class AbscissaViolation(SignfluxError):
    """Dirichlet-series evaluation requested left of the allowed abscissa."""


class TruncationTooShort(SignfluxError):
    """Series truncation cannot meet the requested tail tolerance."""


class DepthUnavailable(SignfluxError):
    """Requested local-factor depth exceeds the table limit."""


class QuadratureFailure(SignfluxError):
    """Adaptive contour quadrature stalled before reaching tolerance."""


class CacheFormatError(SignfluxError):
    """A coefficient cache file is malformed or incompatible."""
