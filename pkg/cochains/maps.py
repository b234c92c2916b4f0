"""
Abstract simplicial maps, the induced chain map f♯ and the cochain pullback f*.

A vertex map is a simplicial map when every source simplex is sent onto a
vertex set (possibly smaller) that spans a simplex of the target. Maps are
validated when they are constructed, over every source simplex.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Union

from cochains.errors import ComplexMismatch, DegreeMismatch, MissingVertexImage, SimplexNotInComplex, SpanningViolation
from cochains.simplicial_core import (
    Chain,
    Cochain,
    Simplex,
    SimplexLike,
    SimplicialComplex,
    VertexId,
    _require_same_complex,
    as_oriented,
    evaluate,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimplicialMap:
    """A validated vertex map between two complexes (they may be the same complex)."""

    source: SimplicialComplex = field(repr=False)
    target: SimplicialComplex = field(repr=False)
    vertex_map: Mapping[VertexId, VertexId] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        mapping = dict(self.vertex_map)
        for vertex in self.source.vertices:
            if vertex not in mapping:
                raise MissingVertexImage(vertex)
        for k in range(self.source.dimension + 1):
            for simplex in self.source.simplices_of(k):
                image = tuple(sorted({mapping[u] for u in simplex}))
                if image not in self.target:
                    raise SpanningViolation(simplex, image)
        restricted = {v: mapping[v] for v in self.source.vertices}
        object.__setattr__(self, "vertex_map", restricted)
        logger.debug("Validated simplicial map on %d vertices", len(restricted))

    def __call__(self, vertex: VertexId) -> VertexId:
        return self.vertex_map[vertex]

    def collapses(self, simplex: SimplexLike) -> bool:
        vertices = as_oriented(simplex).vertices
        return len({self.vertex_map[u] for u in vertices}) < len(vertices)


def validate(source: SimplicialComplex, target: SimplicialComplex,
             vertex_map: Mapping[VertexId, VertexId]) -> SimplicialMap:
    """Check the spanning property and return the map.

    Raises MissingVertexImage or SpanningViolation naming the first violating
    simplex in order of dimension, then lexicographic order.
    """
    return SimplicialMap(source, target, vertex_map)


def identity(complex_: SimplicialComplex) -> SimplicialMap:
    return SimplicialMap(complex_, complex_, {v: v for v in complex_.vertices})


def permutation_map(complex_: SimplicialComplex,
                    permutation: Mapping[VertexId, VertexId]) -> SimplicialMap:
    """The self-map of a complex induced by a permutation of its vertices."""
    vertices = set(complex_.vertices)
    if set(permutation) != vertices or set(permutation.values()) != vertices:
        raise ValueError("permutation must be a bijection of the complex's vertices")
    return SimplicialMap(complex_, complex_, permutation)


def compose(first: SimplicialMap, second: SimplicialMap) -> SimplicialMap:
    """The map ``second ∘ first``, re-validated."""
    if first.target is not second.source and first.target != second.source:
        raise ComplexMismatch("The first map's target is not the second map's source")
    composed = {v: second(first(v)) for v in first.source.vertices}
    return SimplicialMap(first.source, second.target, composed)


def collapse_map(source: SimplicialComplex, target: SimplicialComplex, top: Sequence[VertexId],
                 rng: Optional[random.Random] = None) -> SimplicialMap:
    """Send every source vertex to some vertex of the target simplex ``top``.

    Any such map is simplicial because every subset of ``top`` is a face of
    it. Without ``rng`` vertices are assigned round-robin.
    """
    top = tuple(top)
    if tuple(sorted(top)) not in target:
        raise SimplexNotInComplex(top)
    if rng is None:
        assignment = {v: top[i % len(top)] for i, v in enumerate(source.vertices)}
    else:
        assignment = {v: rng.choice(top) for v in source.vertices}
    return SimplicialMap(source, target, assignment)


def random_simplicial_map(source: SimplicialComplex, target: SimplicialComplex, rng: random.Random,
                          attempts: int = 20) -> SimplicialMap:
    """Draw a simplicial map whose image may spread over several target simplices.

    Source vertices are assigned in random order, each to a random target
    vertex that keeps every fully assigned source simplex spanning. A dead end
    restarts the draw; after ``attempts`` restarts the map collapses onto one
    random top simplex of the target.
    """
    if source.vertices and not target.vertices:
        raise SimplexNotInComplex(())
    cofaces = {v: [s for k in range(1, source.dimension + 1) for s in source.simplices_of(k) if v in s]
               for v in source.vertices}
    for _ in range(attempts):
        order = list(source.vertices)
        rng.shuffle(order)
        assignment: Dict[VertexId, VertexId] = {}
        for v in order:
            candidates = []
            for image in target.vertices:
                assignment[v] = image
                if all(tuple(sorted({assignment[u] for u in s})) in target
                       for s in cofaces[v] if all(u in assignment for u in s)):
                    candidates.append(image)
            if not candidates:
                del assignment[v]
                break
            assignment[v] = rng.choice(candidates)
        else:
            return SimplicialMap(source, target, assignment)
    logger.debug("No spread-out map found in %d attempts, collapsing", attempts)
    top = rng.choice(target.simplices_of(target.dimension))
    return collapse_map(source, target, top, rng)


def pushforward(f: SimplicialMap, c: Union[Chain, SimplexLike],
                degree: Optional[int] = None) -> Chain:
    """The chain map f♯: [u0 ... uk] ↦ [f(u0) ... f(uk)], or 0 if the images repeat."""
    if isinstance(c, Chain):
        _require_same_complex(c.complex, f.source)
        if degree is not None and c.degree != degree:
            raise DegreeMismatch(f"Expected a {degree}-chain, got a {c.degree}-chain")
        result = Chain.zero(f.target, c.degree)
        for simplex, coefficient in c.coefficients.items():
            result = result + pushforward(f, simplex) * coefficient
        return result
    simplex = as_oriented(c)
    if degree is not None and simplex.dimension != degree:
        raise DegreeMismatch(f"Expected a {degree}-simplex, got {simplex!r}")
    if simplex not in f.source:
        raise SimplexNotInComplex(simplex.vertices)
    if f.collapses(simplex):
        return Chain.zero(f.target, simplex.dimension)
    return Chain.from_simplex(f.target, tuple(f(u) for u in simplex.vertices))


def pullback(f: SimplicialMap, a: Cochain) -> Cochain:
    """f*a, defined by (f*a)(c) = a(f♯ c) on every canonical source simplex."""
    _require_same_complex(a.complex, f.target)
    values: Dict[Simplex, Fraction] = {}
    for simplex in f.source.simplices_of(a.degree):
        value = evaluate(a, pushforward(f, simplex))
        if value:
            values[simplex] = value
    return Cochain(f.source, a.degree, values)
