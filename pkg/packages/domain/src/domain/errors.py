"""Domain-level errors."""


class ShockLabError(Exception):
    """Base class for every error raised by the laboratory."""


class ConfigurationError(ShockLabError):
    """Raised when a required configuration is missing or invalid."""


class InvalidParameterError(ShockLabError, ValueError):
    """Raised when a parameter precondition fails (rates, densities, windows, grids)."""


class BoundsError(ShockLabError, IndexError):
    """Raised when a weight is requested outside the field window."""


class WindowOverflowError(ShockLabError):
    """Raised when the second-class particle leaves the uncontaminated part of the window."""

    def __init__(self, message: str, *, time: float, position: int) -> None:
        super().__init__(message)
        self.time = time
        self.position = position


class WindowTooSmallError(ShockLabError):
    """Raised when a stationary maximiser exits on the truncation boundary of the line."""

    def __init__(self, message: str, *, exit_k: int) -> None:
        super().__init__(message)
        self.exit_k = exit_k


class DegenerateTieError(ShockLabError):
    """Raised when two last-passage values that decide a cluster are exactly equal."""


class InsufficientHorizonError(ShockLabError):
    """Raised when an interface path is queried past its last recorded time."""


class InvariantViolationError(ShockLabError):
    """Raised when a pathwise invariant of the dynamics is broken."""


class ContractViolationError(ShockLabError):
    """Raised when a caller breaks an API contract."""


class AccuracyError(ShockLabError, ValueError):
    """Raised when a quadrature order is too small to be trusted."""


class AiryRangeError(InvalidParameterError):
    """Raised when the Airy function is requested outside its documented range."""


class DegenerateCombinationError(InvalidParameterError):
    """Raised when a limit-law combination has a vanishing coefficient."""


class DataError(ShockLabError, ValueError):
    """Raised when input data cannot be used (nonpositive variances, malformed files)."""


class PersistenceError(ShockLabError):
    """Raised when an artifact cannot be written or read; carries the offending path."""

    def __init__(self, message: str, *, path: str) -> None:
        super().__init__(f"{message}: {path}")
        self.path = path
