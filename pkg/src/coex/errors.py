"""Exception hierarchy shared across the runtime."""

from __future__ import annotations


class CoexError(Exception):
    """Base class for all errors raised by this package."""


class LexError(CoexError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {msg}")
        self.line = line
        self.col = col


class ParseError(CoexError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {msg}")
        self.line = line
        self.col = col


class ValidationError(CoexError):
    pass


class ShapeMismatch(CoexError):
    pass


class BadAttrs(CoexError):
    pass


class EvalError(CoexError):
    """Runtime failure while executing a program.

    Carries the step index (-1 for the prologue) and, when known, the
    source position of the offending statement.
    """

    def __init__(self, msg: str, step: int = -1, line: int | None = None, col: int | None = None):
        where = f"step {step}" if step >= 0 else "prologue"
        at = f" at {line}:{col}" if line is not None else ""
        super().__init__(f"{where}{at}: {msg}")
        self.step = step
        self.line = line
        self.col = col


class DatasetExhausted(EvalError):
    pass


class UnknownNative(EvalError):
    pass


class NativeArityError(EvalError):
    pass


class MalformedTrace(CoexError):
    pass


class BudgetExceeded(CoexError):
    """Symbolic program generation exceeded the emitted-operation budget."""


class ExplosionGuard(CoexError):
    """Path enumeration exceeded the configured cap."""


class DecisionMismatch(CoexError):
    """The graph pass popped a decision that does not belong to the
    instruction consuming it. Indicates an orchestrator bug; fatal."""


class ChannelClosed(CoexError):
    """The other side of the channel set failed or shut down."""


class InFlightPass(CoexError):
    pass


class PassCancelled(Exception):
    """Internal control-flow signal: the in-flight pass was cancelled."""
