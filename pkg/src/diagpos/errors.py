"""Exception types shared by every module."""


class DiagposError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(DiagposError, ValueError):
    """An operation was called outside its domain (wrong degree, mixed rings, ...)."""


class DataError(DiagposError, ValueError):
    """Input data is malformed or internally inconsistent."""


class InvariantViolation(DiagposError, RuntimeError):
    """A build-time consistency gate failed; no certificate may be emitted."""


class VerificationFailure(DiagposError):
    """A claimed identity failed to verify; ``report`` carries the failing checks."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
