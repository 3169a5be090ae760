class HetnetError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(HetnetError, ValueError):
    """An argument lies outside the domain where the model is defined."""


class IntegrationError(HetnetError, RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class ConfigError(HetnetError, ValueError):
    """A run configuration could not be parsed or failed validation."""
