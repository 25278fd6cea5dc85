from __future__ import absolute_import, annotations


class DomainError(ValueError):
    """
    Raised when the precondition of an operation is violated, e.g. a discriminant that is not
    congruent to 0 or 1 modulo 4 or a bound evaluated outside of its range of validity.
    """

    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message


class ConfigurationError(ValueError):

    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message


class CheckpointError(ValueError):

    def __init__(self, file_path: str, reason: str) -> None:
        super().__init__(f"Checkpoint [{file_path}] can not be used: {reason}")
        self.file_path = file_path
        self.reason = reason
        self.message = f"Checkpoint [{file_path}] can not be used: {reason}"


class ResourceCapError(RuntimeError):
    """
    Raised when a computation would exceed a configured memory cap or when a bounded counter
    saturates, so that its result could no longer be trusted.
    """

    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message
