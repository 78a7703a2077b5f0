from __future__ import annotations


class RingMismatchError(TypeError):
    """Raised when two scalars from incompatible rings are combined."""


class PoleError(ZeroDivisionError):
    """Raised when an evaluation hits a pole of a rational expression."""


class GradingError(ValueError):
    """Raised when parity bookkeeping is violated or undefined."""
