"""Exception types shared across the package."""


class UsageError(ValueError):
    """Malformed user input (case descriptors, tolerance names, flags)."""


class ConventionError(ValueError):
    """An input violates a structural convention (Hermiticity, algebra
    membership, interlacing, ...) beyond the stated tolerance."""


class CalibrationError(RuntimeError):
    """Discrete sign calibration failed to single out a unique convention."""


class NumericalError(RuntimeError):
    """An internal numerical step failed (rank deficiency, eigenvalue
    pairing failure, non-finite values)."""
