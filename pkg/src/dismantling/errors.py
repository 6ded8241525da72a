"""Exception types.

``ContextError`` covers bad input (unknown labels, malformed files, violated
preconditions on incidences). ``LatticeError`` is raised when an order given
as input is not a finite lattice.
"""
from __future__ import annotations


class ContextError(ValueError):
    pass


class ParseError(ContextError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class LatticeError(ValueError):
    pass


class IntervalError(ValueError):
    """Raised for a pair (u, v) with u not below v."""


class NotDismantlingError(ValueError):
    def __init__(self, message: str, witness: tuple[int, int] | None = None):
        super().__init__(message)
        self.witness = witness
