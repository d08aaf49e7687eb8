"""Exception hierarchy shared across the toolkit.

Everything raised on purpose derives from QspathError so callers (and the
CLI) can distinguish precondition violations from genuine bugs.
"""
from __future__ import annotations


class QspathError(Exception):
    """Base class for all errors raised by qspath."""


class FamilyError(QspathError):
    """The graph is not of the family an operation requires."""


class InvalidPathError(QspathError):
    """An arc sequence is not a valid simple path in the given graph."""


class NoPathError(QspathError):
    """No source-target path exists."""


class PathLimitExceeded(QspathError):
    """Path enumeration found more paths than the caller allowed."""

    def __init__(self, limit: int):
        super().__init__(f"more than {limit} paths; raise the limit to enumerate them")
        self.limit = limit


class CyclicGraphError(QspathError):
    """An operation that is only sound on acyclic graphs got a cyclic one."""


class ScaleError(QspathError):
    """Input is larger than the desk-scale bound of an exact procedure."""


class FormatError(QspathError):
    """Malformed instance or QAP text."""
