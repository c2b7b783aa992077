"""Exception hierarchy shared by the algebra package, the CLI and the routers."""
from typing import Any, Optional


class GarsideError(Exception):
    """Base class for every error raised on purpose by this package."""


class ConfigurationError(GarsideError, ValueError):
    """Unsupported Coxeter type or rank, malformed descriptor, invalid chain."""


class EnumerationTooLargeError(GarsideError):
    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what} has {size} elements, above the cap of {cap}")


class TableValidationError(GarsideError, ValueError):
    def __init__(self, message: str, pair: Optional[tuple] = None):
        self.pair = pair
        if pair is not None:
            message = f"{message} (offending pair: {pair!r})"
        super().__init__(message)


class NumericError(GarsideError):
    """Power iteration failed to converge."""

    def __init__(self, message: str, last_iterate: Any = None, estimate: Optional[float] = None):
        self.last_iterate = last_iterate
        self.estimate = estimate
        super().__init__(message)


class EmptyLanguageError(GarsideError):
    pass


class DifferentComponentError(GarsideError):
    pass


class DefectError(GarsideError):
    """A verified statement does not hold; `diff` describes expected versus computed."""

    def __init__(self, message: str, diff: str = ""):
        self.diff = diff
        super().__init__(f"{message}: {diff}" if diff else message)
