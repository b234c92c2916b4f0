"""
Discrete exterior derivative, cup product and the discrete wedge product.

The wedge product has three interchangeable implementations:

  - ``PermutationSum``: the antisymmetrized cup product, a signed sum over
    all (k+l+1)! orderings of each simplex, normalized by 1/(k+l+1)!.
  - ``AverageOuterLeft``: for every k-face f of σ, the value of ``a`` on f
    times the average of ``b`` over the faces v*(σ∖f), v a vertex of f,
    averaged over the C(k+l+1, k+1) faces f.
  - ``AverageOuterRight``: the same with the outer average over l-faces
    carrying ``b``.

In both averaging forms the orientations are fixed per (face, vertex) pair so
that the front/junction/back ordering is an even permutation of σ; see
``ordering_parity``.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from math import comb, factorial
from typing import Dict, Sequence, Union

from cochains.errors import DegreeMismatch, VertexMismatch
from cochains.simplicial_core import (
    Cochain,
    OrientedSimplex,
    Simplex,
    SimplexLike,
    SimplicialComplex,
    VertexId,
    _require_same_complex,
    as_oriented,
    boundary,
    evaluate,
    permutation_sign,
)

logger = logging.getLogger(__name__)


class WedgeMethod(Enum):
    """How the discrete wedge product is evaluated; all three agree exactly."""

    PermutationSum = "perm"
    AverageOuterLeft = "avg-left"
    AverageOuterRight = "avg-right"


def d(a: Cochain) -> Cochain:
    """Discrete exterior derivative (coboundary): dα(σ) = α(∂σ).

    Evaluated on every (k+1)-simplex in its chosen orientation and stored on
    the canonical form. A complex without (k+1)-simplices yields the zero
    cochain.
    """
    complex_ = a.complex
    values: Dict[Simplex, Fraction] = {}
    for simplex in complex_.simplices_of(a.degree + 1):
        oriented = complex_.chosen_orientation(simplex)
        value = evaluate(a, boundary(oriented, complex_))
        if value:
            _, sign = oriented.canonical
            values[simplex] = sign * value
    return Cochain(complex_, a.degree + 1, values)


@dataclass(frozen=True)
class CupProduct:
    """The cup product of two cochains.

    The cup product is not skew-symmetric, so it is evaluated on ordered
    simplices directly: (a⌣b)[v0 ... v_{k+l}] = a[v0 ... vk] · b[vk ... v_{k+l}].
    ``values`` holds the evaluations on ascending orderings only.
    """

    front: Cochain
    back: Cochain

    @property
    def degree(self) -> int:
        return self.front.degree + self.back.degree

    @property
    def complex(self) -> SimplicialComplex:
        return self.front.complex

    def evaluate(self, ordering: SimplexLike) -> Fraction:
        simplex = as_oriented(ordering)
        if simplex.dimension != self.degree:
            raise DegreeMismatch(
                f"A degree-{self.degree} cup product cannot be evaluated on {simplex!r}"
            )
        k = self.front.degree
        vertices = simplex.vertices
        front_value = evaluate(self.front, vertices[:k + 1])
        if not front_value:
            return Fraction(0)
        return front_value * evaluate(self.back, vertices[k:])

    def coboundary_on(self, ordering: SimplexLike) -> Fraction:
        """d(a⌣b) on an ordered (k+l+1)-simplex: the alternating sum over its faces."""
        simplex = as_oriented(ordering)
        if simplex.dimension != self.degree + 1:
            raise DegreeMismatch(
                f"d of a degree-{self.degree} cup product needs a {self.degree + 1}-simplex, got {simplex!r}"
            )
        vertices = simplex.vertices
        return sum(((-1) ** i * self.evaluate(vertices[:i] + vertices[i + 1:])
                    for i in range(len(vertices))), Fraction(0))

    @cached_property
    def values(self) -> Dict[Simplex, Fraction]:
        stored = {}
        for simplex in self.complex.simplices_of(self.degree):
            value = self.evaluate(simplex)
            if value:
                stored[simplex] = value
        return stored


def cup(a: Cochain, b: Cochain) -> CupProduct:
    _require_same_complex(a.complex, b.complex)
    return CupProduct(a, b)


def wedge_perm(a: Cochain, b: Cochain) -> Cochain:
    """Wedge product as the normalized signed sum over all vertex orderings."""
    product = cup(a, b)
    n = product.degree
    normalization = Fraction(1, factorial(n + 1))
    orderings = [(perm, permutation_sign(perm)) for perm in itertools.permutations(range(n + 1))]
    values: Dict[Simplex, Fraction] = {}
    for simplex in a.complex.simplices_of(n):
        total = Fraction(0)
        for perm, sign in orderings:
            term = product.evaluate(tuple(simplex[p] for p in perm))
            if term:
                total += sign * term
        if total:
            values[simplex] = total * normalization
    logger.debug("wedge_perm: degree (%d, %d) over %d simplices",
                 a.degree, b.degree, len(a.complex.simplices_of(n)))
    return Cochain(a.complex, n, values)


def ordering_parity(face: Sequence[VertexId], v: VertexId, rest: Sequence[VertexId],
                    sigma: SimplexLike) -> int:
    """Sign of the permutation taking sigma's ordering to (face∖{v}, v, rest).

    >>> ordering_parity([0, 2], 2, [1], [0, 1, 2])
    -1
    """
    sigma = as_oriented(sigma)
    face = tuple(face)
    if v not in face:
        raise VertexMismatch(f"Vertex {v} is not in the face {list(face)}")
    ordering = tuple(x for x in face if x != v) + (v,) + tuple(rest)
    if len(ordering) != len(set(ordering)) or set(ordering) != set(sigma.vertices):
        raise VertexMismatch(
            f"{list(face)}, {v} and {list(rest)} do not partition the vertices of {sigma!r}"
        )
    return permutation_sign(ordering) * permutation_sign(sigma.vertices)


def _average_outer_left(a: Cochain, b: Cochain, simplex: Simplex) -> Fraction:
    k = a.degree
    sigma = OrientedSimplex(simplex)
    total = Fraction(0)
    for face in a.complex.faces_of(simplex, k):
        outer = a.value_on(face)
        if not outer:
            continue
        rest = tuple(x for x in simplex if x not in face)
        inner = Fraction(0)
        for v in face:
            # a is read on the ascending face; front is the ordering (f∖{v}, v)
            front = tuple(x for x in face if x != v) + (v,)
            sign = ordering_parity(face, v, rest, sigma) * permutation_sign(front)
            inner += sign * evaluate(b, (v,) + rest)
        total += outer * inner / (k + 1)
    return total / comb(len(simplex), k + 1)


def _average_outer_right(a: Cochain, b: Cochain, simplex: Simplex) -> Fraction:
    l = b.degree
    sigma = OrientedSimplex(simplex)
    total = Fraction(0)
    for face in b.complex.faces_of(simplex, l):
        outer = b.value_on(face)
        if not outer:
            continue
        rest = tuple(x for x in simplex if x not in face)
        inner = Fraction(0)
        for v in face:
            back = (v,) + tuple(x for x in face if x != v)
            sign = ordering_parity(rest + (v,), v, back[1:], sigma) * permutation_sign(back)
            inner += sign * evaluate(a, rest + (v,))
        total += inner * outer / (l + 1)
    return total / comb(len(simplex), l + 1)


def wedge_avg(a: Cochain, b: Cochain,
              method: WedgeMethod = WedgeMethod.AverageOuterLeft) -> Cochain:
    """Wedge product through one of the two averaging formulas."""
    _require_same_complex(a.complex, b.complex)
    if method is WedgeMethod.AverageOuterLeft:
        local = _average_outer_left
    elif method is WedgeMethod.AverageOuterRight:
        local = _average_outer_right
    else:
        raise ValueError(f"{method} is not an averaging method")
    n = a.degree + b.degree
    values: Dict[Simplex, Fraction] = {}
    for simplex in a.complex.simplices_of(n):
        value = local(a, b, simplex)
        if value:
            values[simplex] = value
    return Cochain(a.complex, n, values)


def wedge(a: Cochain, b: Cochain,
          method: Union[WedgeMethod, str] = WedgeMethod.AverageOuterLeft) -> Cochain:
    method = WedgeMethod(method)
    logger.debug("wedge: degree (%d, %d) via %s", a.degree, b.degree, method.value)
    if method is WedgeMethod.PermutationSum:
        return wedge_perm(a, b)
    return wedge_avg(a, b, method)


def vertex_alternating_form(a: Cochain, b: Cochain) -> Cochain:
    """The two-edge wedge with its terms collected at vertices.

    On a triangle with ascending edges e0 < e1 < e2 the value is
    (1/6) Σ_{i<j} (a(ei) b(ej) − a(ej) b(ei)).
    """
    if a.degree != 1 or b.degree != 1:
        raise DegreeMismatch("The vertex-alternating form is defined for two 1-cochains")
    _require_same_complex(a.complex, b.complex)
    values: Dict[Simplex, Fraction] = {}
    for triangle in a.complex.simplices_of(2):
        edges = list(itertools.combinations(triangle, 2))
        total = Fraction(0)
        for first, second in itertools.combinations(edges, 2):
            total += a.value_on(first) * b.value_on(second) - a.value_on(second) * b.value_on(first)
        if total:
            values[triangle] = total / 6
    return Cochain(a.complex, 2, values)


def associator(a: Cochain, b: Cochain, c: Cochain,
               method: Union[WedgeMethod, str] = WedgeMethod.AverageOuterLeft) -> Cochain:
    """(a∧b)∧c − a∧(b∧c). The discrete wedge is not associative, so this is generally nonzero."""
    return wedge(wedge(a, b, method), c, method) - wedge(a, wedge(b, c, method), method)
