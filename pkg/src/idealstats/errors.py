"""Exception hierarchy. Everything raised on purpose derives from IdealstatsError."""


class IdealstatsError(Exception):
    """Base class for domain and validation failures."""


class InvalidFieldError(IdealstatsError):
    """Field descriptor or catalog entry violates a field invariant."""


class CatalogError(IdealstatsError):
    """Catalog file cannot be parsed."""


class MathDomainError(IdealstatsError):
    """Argument outside the region where a quantity is defined."""


class PrecisionError(IdealstatsError):
    """Requested tolerance cannot be met within resource limits."""


class EmptySampleError(IdealstatsError):
    """A statistic was requested for an empty sample."""


class DegenerateSystemError(IdealstatsError):
    """A Bernoulli system with zero variance cannot be normalized."""
