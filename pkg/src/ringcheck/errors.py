"""Exception hierarchy and the three/four-valued verdict used across the kernel."""

from __future__ import annotations

import enum


class RingcheckError(Exception):
    """Base class for user-facing errors (CLI exit code 1)."""


class RingMismatchError(RingcheckError, ValueError):
    pass


class ParseError(RingcheckError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        loc = f"{line}:{col}: " if line else ""
        super().__init__(f"{loc}{message}")


class PreconditionError(RingcheckError, ValueError):
    """An operation was called outside its documented domain."""


class InvariantError(AssertionError):
    """Internal invariant violated (CLI exit code 2)."""


class Verdict(str, enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"
    ILL_POSED = "ill-posed"

    @classmethod
    def of(cls, flag: bool) -> "Verdict":
        return cls.TRUE if flag else cls.FALSE

    def __str__(self) -> str:
        return self.value


def check(condition: bool, message: str) -> None:
    if not condition:
        raise InvariantError(message)
