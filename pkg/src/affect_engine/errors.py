"""Exception hierarchy shared by every module."""


class AffectEngineError(Exception):
    """Base class for all package errors."""


class DegenerateDistributionError(AffectEngineError, ValueError):
    """A weight vector cannot be normalized (all zero or negative entries)."""


class InvalidInputError(AffectEngineError, ValueError):
    """Malformed numeric input: NaNs, mismatched shapes, bad indices."""


class ImpossibleObservationError(AffectEngineError):
    """An observation has zero probability under the current beliefs."""


class ConfigError(AffectEngineError, ValueError):
    """A scenario configuration violates one of its invariants."""
