"""Exception taxonomy shared across the toolkit.

Search routines distinguish three outcomes: a result, a proven negative
(returned as a value or raised as :class:`NotFoundError` with a witness),
and :class:`ResourceLimitError` when a node budget ran out before either
could be established.
"""

from __future__ import annotations

from typing import Any


class ChifracError(Exception):
    """Base class for all toolkit errors."""


class GraphInputError(ChifracError, ValueError):
    """Malformed graph data: bad ids, broken symmetry, sizes out of range."""


class Graph6FormatError(GraphInputError):
    """graph6 parse failure, pinpointed by line number and byte offset."""

    def __init__(self, message: str, *, line: int | None = None, offset: int | None = None):
        self.line = line
        self.offset = offset
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte {offset}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)


class NotConnectedError(ChifracError):
    """Operation requires a connected graph."""


class NotSeparatorError(ChifracError):
    """The given vertex pair does not disconnect the graph."""


class NotVertexTransitiveError(ChifracError):
    """Operation requires a vertex-transitive graph."""


class ResourceLimitError(ChifracError):
    """A configurable node budget was exhausted.

    Carries whatever partial information the search had established:
    ``lower`` and ``upper`` are bounds on the quantity being computed
    (``None`` when not applicable), ``nodes`` is the budget that ran out.
    """

    def __init__(self, message: str, *, nodes: int | None = None,
                 lower: Any = None, upper: Any = None):
        self.nodes = nodes
        self.lower = lower
        self.upper = upper
        super().__init__(message)


class NotFoundError(ChifracError):
    """Exhaustive search proved no object exists; ``witness`` explains why."""

    def __init__(self, message: str, *, witness: Any = None):
        self.witness = witness
        super().__init__(message)


class HypothesisViolationError(ChifracError):
    """A theorem's precondition fails; ``vertex`` is the offender when known."""

    def __init__(self, message: str, *, vertex: int | None = None):
        self.vertex = vertex
        super().__init__(message)


class NoValidSelectionError(ChifracError):
    """Every candidate pair of contracted non-edges produced a forbidden
    pattern; ``bad_triple`` records (pair1, pair2, embedding)."""

    def __init__(self, message: str, *, vertex: int | None = None, bad_triple: Any = None):
        self.vertex = vertex
        self.bad_triple = bad_triple
        super().__init__(message)


class ClassInvalidError(ChifracError):
    """A color class violated the disjointness the contraction step needs."""

    def __init__(self, message: str, *, pair: tuple[int, int] | None = None):
        self.pair = pair
        super().__init__(message)


class NotFourColorableError(ChifracError):
    """A contracted class graph refused a 4-coloring.

    ``critical_vertices`` spans a 5-critical subgraph (in class-graph ids)
    and ``gallai_diagnosis`` reports whether its degree-4 core is a Gallai
    forest, the structural fact the impossibility argument rests on.
    """

    def __init__(self, message: str, *, critical_vertices: Any = None,
                 gallai_diagnosis: Any = None):
        self.critical_vertices = critical_vertices
        self.gallai_diagnosis = gallai_diagnosis
        super().__init__(message)


class AssemblyConflictError(ChifracError):
    """Assembled fold coloring failed verification (internal invariant)."""
