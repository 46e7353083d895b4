"""Exception types raised by mlqm."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested quantity."""


class ConfigurationError(ValueError):
    """Inconsistent sizes or settings for a numerical construction."""


class ComputationError(RuntimeError):
    """A numerical routine failed to produce a usable result."""
