"""Exception types shared across the package."""


class DoobError(Exception):
    """Base class for all package-specific errors."""


class DeskScaleError(DoobError):
    """A requested parameter set exceeds the desk-scale resource guard."""


class ParameterMismatchError(DoobError):
    """Objects with incompatible (m, n) parameters were combined."""


class FormatError(DoobError):
    """A code or parity-function file failed to parse or validate."""


class ConsistencyError(DoobError):
    """An internal invariant failed; indicates a bug or corrupted input state."""
