"""Exception types shared across the toolkit."""


class HardyLabError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatchError(HardyLabError):
    """Operands live in Hilbert spaces of different dimension."""


class ZeroProbabilityError(HardyLabError):
    """Conditioning on an event of (numerically) zero probability."""


class InvalidParameterError(HardyLabError, ValueError):
    """A caller-supplied parameter is outside its documented range."""


class InternalConsistencyError(HardyLabError):
    """A cross-check failed; indicates an implementation bug, never physics."""
