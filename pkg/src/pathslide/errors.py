"""Exception hierarchy shared by the solvers and the CLI."""

from __future__ import annotations


class PathSlideError(Exception):
    """Base class for every error raised by this package."""


class InvalidPathError(PathSlideError):
    pass


class IllegalStepError(PathSlideError):
    pass


class ReplayError(PathSlideError):
    """A witness step could not be applied; ``index`` is the failing step."""

    def __init__(self, index: int, reason: str):
        super().__init__(f"step {index}: {reason}")
        self.index = index
        self.reason = reason


class InvalidInstanceError(PathSlideError):
    pass


class ParseError(PathSlideError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class CapacityError(PathSlideError):
    def __init__(self, cap: int):
        super().__init__(f"state cap of {cap} visited states exceeded")
        self.cap = cap


class UnsupportedModeError(PathSlideError):
    pass


class WrongSolverError(PathSlideError):
    pass


class SizeLimitError(PathSlideError):
    pass


class InvalidCertificateError(PathSlideError):
    pass


class NoTransferError(PathSlideError):
    pass


class GenerationError(PathSlideError):
    pass
