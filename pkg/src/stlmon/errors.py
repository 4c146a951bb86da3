"""Exception types raised across the library."""

from __future__ import annotations


class StlError(Exception):
    """Base class for all stlmon errors."""


class FormulaSyntaxError(StlError):
    """Raised when DSL text cannot be parsed.

    Carries the 1-based ``line`` and ``column`` of the offending token and,
    when available, a description of what the parser ``expected`` there.
    """

    def __init__(self, message: str, line: int, column: int, expected: str | None = None):
        self.line = line
        self.column = column
        self.expected = expected
        detail = f"{message} at line {line}, column {column}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)


class IntervalError(StlError):
    """Temporal interval violates 0 <= a <= b < inf."""


class InvalidFormulaError(StlError):
    """Formula tree violates a structural invariant."""


class UnboundVariableError(StlError):
    """A $-variable has no binding in the variable context."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unbound variable ${name}")


class UnknownSignalError(StlError):
    """A step refers to a signal that does not occur in the formula."""

    def __init__(self, signal: str):
        self.signal = signal
        super().__init__(f"signal {signal!r} does not occur in the monitored formula")


class NonMonotonicTimestampError(StlError):
    """Timestamps for one signal must strictly increase."""

    def __init__(self, signal: str, t_old: float, t_new: float):
        self.signal = signal
        self.t_old = t_old
        self.t_new = t_new
        super().__init__(
            f"timestamp {t_new} for signal {signal!r} is not after previous {t_old}"
        )


class EmptyWindowError(StlError):
    """A sliding-window query drained the wedge."""


class InsufficientTraceError(StlError):
    """The trace does not cover the temporal horizon required at t."""


class BatchUpdateError(StlError):
    """A step inside a batch failed.

    ``events`` holds the events emitted by the steps that succeeded before
    the failure, ``index`` the position of the failing step and ``cause``
    the underlying error.
    """

    def __init__(self, events, index: int, cause: StlError):
        self.events = events
        self.index = index
        self.cause = cause
        super().__init__(f"batch step {index} failed: {cause}")
