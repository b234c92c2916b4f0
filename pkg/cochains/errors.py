"""
Exception hierarchy for the discrete exterior calculus toolkit.

Every error raised by the library derives from DECError so callers (and the
command line) can tell library failures apart from programming errors.
"""

from typing import Sequence, Tuple


class DECError(Exception):
    """Base class for all toolkit errors."""


class DuplicateVertex(DECError):
    """A vertex list that must name distinct vertices repeats one."""

    def __init__(self, vertices: Sequence[int]):
        self.vertices = tuple(vertices)
        super().__init__(f"Repeated vertex in simplex {list(self.vertices)}")


class SimplexNotInComplex(DECError):
    """A simplex was used with a complex that does not contain it."""

    def __init__(self, simplex: Sequence[int]):
        self.simplex = tuple(simplex)
        super().__init__(f"Simplex {list(self.simplex)} is not in the complex")


class DegreeMismatch(DECError):
    """Operands of incompatible degree."""


class VertexMismatch(DECError):
    """The parts of an ordering do not partition a simplex's vertices."""


class ComplexMismatch(DECError):
    """Operands live on different simplicial complexes."""


class SpanningViolation(DECError):
    """A vertex map sends a simplex onto a vertex set that spans no simplex."""

    def __init__(self, simplex: Tuple[int, ...], image: Tuple[int, ...]):
        self.simplex = simplex
        self.image = image
        super().__init__(
            f"Simplex {list(simplex)} maps to {list(image)}, which is not a simplex of the target"
        )


class MissingVertexImage(DECError):
    """A vertex map is not defined on some source vertex."""

    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"Vertex map has no image for source vertex {vertex}")


class FaceNotInAmbient(DECError):
    """A Whitney form was requested for a simplex that is not a face of the ambient simplex."""


class AmbientMismatch(DECError):
    """Polynomial forms over different ambient simplices were combined."""


class NotSpanning(DECError):
    """Two faces do not jointly span the given simplex."""


class OverlapTooLarge(DECError):
    """Two faces share more than their junction vertex."""
