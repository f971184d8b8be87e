"""Exception hierarchy for d2gen."""

from __future__ import annotations


class D2GenError(Exception):
    """Base class for every error raised by this package."""


class ParseError(D2GenError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedHeader(ParseError):
    pass


class DuplicateEdge(ParseError):
    pass


class LoopEdge(ParseError):
    pass


class IndexOutOfRange(ParseError):
    pass


class SizeBoundExceeded(D2GenError):
    pass


class NotContractible(D2GenError):
    pass


class NotAVertex(D2GenError):
    pass


class DegreeTooSmall(D2GenError):
    pass


class EdgeAbsent(D2GenError):
    pass


class SimplicityViolation(D2GenError):
    pass


class PreconditionViolated(D2GenError):
    def __init__(self, clause: str, detail: str = "") -> None:
        self.clause = clause
        super().__init__(f"{clause}: {detail}" if detail else clause)


class InvalidModel(D2GenError):
    pass


class NotAnEarPath(D2GenError):
    pass


class TrichotomyViolation(D2GenError):
    """An ear-path matched zero or several classes."""


class NotSwitching(D2GenError):
    pass


class NotOnRootPath(D2GenError):
    pass


class NotAMinor(D2GenError):
    pass


class NotStrongly2Connected(D2GenError):
    pass


class NoSuccessor(D2GenError):
    """No augmentation of the current digraph is a minor of the target."""
