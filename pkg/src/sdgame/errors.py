"""Exception types shared across the package."""


class SdgameError(Exception):
    """Base class for all package errors."""


class DomainError(SdgameError, ValueError):
    """A quantity left the mathematical domain of the model (e.g. log of a
    non-positive number, deviation at or above the isolation budget)."""


class ParameterError(SdgameError, ValueError):
    """An argument violates a structural precondition (bad shape, bad range,
    mismatched lengths)."""


class CapacityError(SdgameError, RuntimeError):
    """A request exceeds a configured enumeration or evaluation budget."""


class ConfigError(SdgameError, ValueError):
    """A configuration file could not be parsed or validated."""
