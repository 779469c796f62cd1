"""Exception types shared across the package."""


class SolwaveError(Exception):
    """Base class for all package errors."""


class ConfigurationError(SolwaveError, ValueError):
    """Invalid parameters at construction time (bad grid, degenerate degrees, ...)."""


class DimensionMismatchError(SolwaveError, ValueError):
    """Vector length or grid does not match the operation's expectation."""


class DegenerateIterateError(SolwaveError, RuntimeError):
    """An iterate made the stabilizing factor (or another ratio) undefined."""
