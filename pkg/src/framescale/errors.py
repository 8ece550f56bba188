"""Exception hierarchy shared across the package.

Two branches matter to callers: ``ValidationError`` covers malformed or
mathematically inadmissible input, ``CapExceeded`` covers inputs that are
well formed but larger than a guarded enumeration allows.  The CLI maps
them to distinct exit codes.
"""


class FramescaleError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(FramescaleError):
    """Input rejected: schema, dimension, or mathematical precondition."""


class CapExceeded(FramescaleError):
    """Input exceeds a configured enumeration guard."""


class DimensionTooSmall(ValidationError):
    """Ambient dimension below 2; square-difference normalization is undefined."""


class TooFewVectors(ValidationError):
    """Fewer vectors than the ambient dimension; the frame cannot span."""


class NotUnitNorm(ValidationError):
    """A vector's norm deviates from 1 by more than the ingestion tolerance."""


class BadDiagonal(ValidationError):
    """Gram input whose diagonal is not exactly all ones."""


class NotPSD(ValidationError):
    """Gram input that is not positive semidefinite, or has rank above n."""


class EmptySubset(ValidationError):
    """An index subset argument was empty where a nonempty one is required."""


class NotSpanning(ValidationError):
    """Frame vectors do not span the ambient space."""


class NotAScaling(ValidationError):
    """Weights do not make the scaled frame Parseval."""


class NotDisjoint(ValidationError):
    """Index sets required to be disjoint overlap (or one is empty)."""


class CoverNotFound(FramescaleError):
    """No disjoint empty-cover decomposition exists; internal inconsistency."""


class TooLarge(CapExceeded):
    """Enumeration size guard exceeded."""


class WitnessSearchTooLarge(CapExceeded):
    """Witness search skipped because the scaling set exceeds the guard."""
