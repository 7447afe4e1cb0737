"""
Module: errors.py
Description: Exception hierarchy shared by every walkdgs package. Nothing is
             ever silently downgraded: a failed exact check raises.

core/errors.py - Error model

ArgumentError and its relatives signal caller mistakes, DomainError signals
a graph outside the family an operation needs, and InvariantViolationError
signals an exact post-condition failure that the theory rules out. The CLI
maps the latter to exit code 2 and everything else to exit code 1.
"""

from __future__ import annotations


class DgsError(RuntimeError):
    """Base class for every walkdgs error."""


class ArgumentError(DgsError, ValueError):
    """Invalid argument: non-prime modulus, size mismatch, mixed orders."""


class DimensionError(ArgumentError):
    """Matrix shape does not fit the operation (e.g. non-square)."""


class SingularMatrixError(DgsError):
    """A matrix that must be invertible over Q is singular."""


class ScaleError(DgsError):
    """An oracle-scale operation was asked to go beyond its bound."""


class GraphError(ArgumentError):
    """Adjacency data does not describe a simple undirected graph."""


class Graph6Error(DgsError):
    """Malformed graph6 text."""

    def __init__(self, message: str, *, offset: int | None = None,
                 line: int | None = None) -> None:
        self.message = message
        self.offset = offset
        self.line = line
        super().__init__(str(self))

    def __str__(self) -> str:
        where = []
        if self.line is not None:
            where.append(f'line {self.line}')
        if self.offset is not None:
            where.append(f'byte {self.offset}')
        return f'{self.message} ({", ".join(where)})' if where else self.message

    def at_line(self, line: int) -> 'Graph6Error':
        """Return a copy of this error tagged with a corpus line number."""
        return Graph6Error(self.message, offset=self.offset, line=line)


class AmbiguousTwinsError(DgsError):
    """More than one transposition-twin pair exists."""

    def __init__(self, pairs: list[tuple[int, int]]) -> None:
        self.pairs = pairs
        super().__init__(f'graph has {len(pairs)} twin pairs: {pairs}')


class DomainError(DgsError):
    """The graph is outside the family the operation is defined for."""


class NotAlmostControllableError(DomainError):
    """The walk matrix does not have rank n - 1."""


class MisclassificationError(DomainError):
    """Finite-field data contradicts the family the graph was placed in."""


class MisuseError(DgsError):
    """An operation was called in a situation its contract excludes."""


class InvariantViolationError(DgsError):
    """An exact post-condition guaranteed by the theory failed."""
