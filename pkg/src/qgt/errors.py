class QGTError(Exception):
    """Base class for library errors."""

    exit_code = 1


class ValidationError(QGTError, ValueError):
    """Input data violates a structural condition."""

    exit_code = 2


class CapExceeded(QGTError, RuntimeError):
    """A computation did not finish within its configured length cap."""

    exit_code = 3
