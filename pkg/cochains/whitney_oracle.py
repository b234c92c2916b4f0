"""
Exact Whitney forms on a reference simplex and Wilson's cochain product.

Everything is computed on one abstract simplex ν = [x0 ... xn] without
coordinates. Barycentric coordinates λ0 ... λn are indexed by the position of
each vertex in ν's ascending vertex order, and dλ0 is eliminated with
Σ dλi = 0, so a polynomial form maps each wedge of dλ1 ... dλn to a sympy
polynomial in λ0 ... λn over QQ.

Whitney form of a face [x_{i0} ... x_{ik}] (Whitney, Dodziuk):

    W = k! Σ_j (-1)^j λ_{ij} dλ_{i0} ∧ ... ∧ (omit j) ∧ ... ∧ dλ_{ik}

Integration uses ∫ λ0^a0 ... λn^an dλ1 ∧ ... ∧ dλn = (Π ai!) / (n + Σ ai)!
over the ascending orientation of ν; every volume factor cancels.
"""

import itertools
import logging
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Dict, Mapping, Tuple

import sympy as sp

from cochains.errors import AmbientMismatch, DegreeMismatch, FaceNotInAmbient, NotSpanning, OverlapTooLarge
from cochains.simplicial_core import (
    Cochain,
    OrientedSimplex,
    Simplex,
    SimplexLike,
    _require_same_complex,
    as_oriented,
    as_scalar,
    permutation_sign,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class BarycentricMonomial:
    """λ0^e0 · λ1^e1 · ... · λn^en, stored as the exponent tuple."""

    exponents: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.exponents)


Basis = Tuple[int, ...]
FormKey = Tuple[BarycentricMonomial, Basis]


@lru_cache(maxsize=None)
def barycentric_symbols(n: int) -> Tuple[sp.Symbol, ...]:
    """The generators λ0 ... λn of the polynomial ring on an n-simplex."""
    return tuple(sp.symbols(f"lambda0:{n + 1}"))


def _poly(expr, n: int) -> sp.Poly:
    return sp.Poly(expr, *barycentric_symbols(n), domain=sp.QQ)


def _rational(value: Fraction) -> sp.Rational:
    return sp.Rational(value.numerator, value.denominator)


def _fraction(value: sp.Rational) -> Fraction:
    return Fraction(int(value.p), int(value.q))


@dataclass(frozen=True)
class PolyForm:
    """A polynomial differential form of one degree on an ambient simplex.

    ``components`` maps an ascending dλ index tuple drawn from 1..n to its
    coefficient, a nonzero polynomial in λ0 ... λn over QQ.
    """

    ambient: OrientedSimplex
    degree: int
    components: Mapping[Basis, sp.Poly] = field(default_factory=dict, hash=False)

    @property
    def n(self) -> int:
        return self.ambient.dimension

    @property
    def terms(self) -> Dict[FormKey, Fraction]:
        """The form flattened to (monomial, dλ basis) → coefficient."""
        return {
            (BarycentricMonomial(monomial), basis): _fraction(coefficient)
            for basis, poly in self.components.items()
            for monomial, coefficient in poly.as_dict(native=False).items()
        }

    def coefficient(self, basis: Basis) -> sp.Poly:
        return self.components.get(tuple(basis), _poly(0, self.n))

    @classmethod
    def zero(cls, ambient: SimplexLike, degree: int) -> "PolyForm":
        return cls(as_oriented(ambient), degree, {})

    @classmethod
    def coordinate(cls, ambient: SimplexLike, index: int) -> "PolyForm":
        """The 0-form λ_index."""
        ambient = as_oriented(ambient)
        n = ambient.dimension
        return cls(ambient, 0, {(): _poly(barycentric_symbols(n)[index], n)})

    @classmethod
    def differential(cls, ambient: SimplexLike, index: int) -> "PolyForm":
        """The 1-form dλ_index, with dλ0 written as −(dλ1 + ... + dλn)."""
        ambient = as_oriented(ambient)
        n = ambient.dimension
        if index:
            return cls(ambient, 1, {(index,): _poly(1, n)})
        return cls(ambient, 1, {(i,): _poly(-1, n) for i in range(1, n + 1)})

    @classmethod
    def _collect(cls, ambient: OrientedSimplex, degree: int, components: Mapping[Basis, sp.Poly]) -> "PolyForm":
        return cls(ambient, degree, {basis: poly for basis, poly in components.items() if not poly.is_zero})

    def is_zero(self) -> bool:
        return not self.components

    def __add__(self, other: "PolyForm") -> "PolyForm":
        if self.ambient != other.ambient:
            raise AmbientMismatch("Cannot add forms over different ambient simplices")
        if self.degree != other.degree:
            raise DegreeMismatch(f"Cannot add forms of degree {self.degree} and {other.degree}")
        merged = dict(self.components)
        for basis, poly in other.components.items():
            merged[basis] = merged[basis] + poly if basis in merged else poly
        return PolyForm._collect(self.ambient, self.degree, merged)

    def __neg__(self) -> "PolyForm":
        return PolyForm(self.ambient, self.degree, {basis: -poly for basis, poly in self.components.items()})

    def __sub__(self, other: "PolyForm") -> "PolyForm":
        return self + (-other)

    def __mul__(self, scalar) -> "PolyForm":
        factor = as_scalar(scalar)
        if factor == 0:
            return PolyForm.zero(self.ambient, self.degree)
        rational = _rational(factor)
        return PolyForm(self.ambient, self.degree,
                        {basis: poly.mul_ground(rational) for basis, poly in self.components.items()})

    __rmul__ = __mul__


class EpsilonSign(IntEnum):
    """Relative orientation sign ε(σ, τ) with sgn(σ)·sgn(τ) = ε·sgn(ν′)."""

    POSITIVE = 1
    NEGATIVE = -1


def _local_index(ambient: OrientedSimplex, vertex) -> int:
    return sorted(ambient.vertices).index(vertex)


def wedge_forms(p: PolyForm, q: PolyForm) -> PolyForm:
    """Wedge product of polynomial forms over the same ambient simplex."""
    if p.ambient != q.ambient:
        raise AmbientMismatch(f"Forms live on {p.ambient!r} and {q.ambient!r}")
    product: Dict[Basis, sp.Poly] = {}
    for left_basis, left_poly in p.components.items():
        for right_basis, right_poly in q.components.items():
            if set(left_basis) & set(right_basis):
                continue
            merged = left_basis + right_basis
            term = left_poly * right_poly
            if permutation_sign(merged) < 0:
                term = -term
            key = tuple(sorted(merged))
            product[key] = product[key] + term if key in product else term
    return PolyForm._collect(p.ambient, p.degree + q.degree, product)


@lru_cache(maxsize=None)
def _whitney(face: OrientedSimplex, ambient: OrientedSimplex) -> PolyForm:
    indices = [_local_index(ambient, v) for v in face.vertices]
    k = face.dimension
    result = PolyForm.zero(ambient, k)
    for j, index in enumerate(indices):
        term = PolyForm.coordinate(ambient, index)
        for m, other in enumerate(indices):
            if m != j:
                term = wedge_forms(term, PolyForm.differential(ambient, other))
        result = result + term * (-1) ** j
    return result * factorial(k)


def whitney(face: SimplexLike, ambient: SimplexLike) -> PolyForm:
    """The Whitney form of an oriented face of the ambient simplex."""
    face = as_oriented(face)
    ambient = as_oriented(ambient)
    if not set(face.vertices) <= set(ambient.vertices):
        raise FaceNotInAmbient(f"{face!r} is not a face of {ambient!r}")
    return _whitney(face, ambient)


def whitney_cochain(a: Cochain, ambient: SimplexLike) -> PolyForm:
    """W applied to a cochain restricted to the faces of the ambient simplex."""
    ambient = as_oriented(ambient)
    result = PolyForm.zero(ambient, a.degree)
    for face in itertools.combinations(sorted(ambient.vertices), a.degree + 1):
        value = a.value_on(face)
        if value:
            result = result + whitney(face, ambient) * value
    return result


def integrate(p: PolyForm) -> Fraction:
    """Exact integral of a top-degree form over its ambient simplex, in the ambient's orientation."""
    n = p.n
    if p.degree != n:
        raise DegreeMismatch(f"Only {n}-forms can be integrated over a {n}-simplex, got a {p.degree}-form")
    total = Fraction(0)
    for (monomial, _), value in p.terms.items():
        exponents = monomial.exponents
        total += value * Fraction(prod(factorial(e) for e in exponents), factorial(n + monomial.degree))
    return permutation_sign(p.ambient.vertices) * total


def epsilon_sign(sigma: SimplexLike, tau: SimplexLike, nu_prime: SimplexLike) -> EpsilonSign:
    """The sign ε(σ, τ) solving sgn(σ)·sgn(τ) = ε·sgn(ν′).

    >>> epsilon_sign([1, 0], [0, 2], [0, 1, 2])
    <EpsilonSign.NEGATIVE: -1>
    """
    sigma, tau, nu_prime = as_oriented(sigma), as_oriented(tau), as_oriented(nu_prime)
    shared = set(sigma.vertices) & set(tau.vertices)
    if len(shared) > 1:
        raise OverlapTooLarge(f"{sigma!r} and {tau!r} share {len(shared)} vertices")
    if len(shared) != 1 or set(sigma.vertices) | set(tau.vertices) != set(nu_prime.vertices):
        raise NotSpanning(f"{sigma!r} and {tau!r} do not span {nu_prime!r} through one shared vertex")
    return EpsilonSign(permutation_sign(sigma.vertices) * permutation_sign(tau.vertices)
                       * permutation_sign(nu_prime.vertices))


def base_integral(k: int, l: int) -> Fraction:
    """k!·l!/(k+l+1)!, the integral of Wσ∧Wτ over the simplex they span."""
    return Fraction(factorial(k) * factorial(l), factorial(k + l + 1))


def _symbolic_value(a: Cochain, b: Cochain, simplex: Simplex) -> Fraction:
    ambient = a.complex.chosen_orientation(simplex)
    value = integrate(wedge_forms(whitney_cochain(a, ambient), whitney_cochain(b, ambient)))
    return permutation_sign(ambient.vertices) * value


def _closed_form_value(a: Cochain, b: Cochain, simplex: Simplex) -> Fraction:
    k, l = a.degree, b.degree
    base = base_integral(k, l)
    total = Fraction(0)
    for sigma in itertools.combinations(simplex, k + 1):
        alpha = a.value_on(sigma)
        if not alpha:
            continue
        for tau in itertools.combinations(simplex, l + 1):
            shared = set(sigma) & set(tau)
            if len(shared) != 1:
                continue
            junction = shared.pop()
            front = tuple(v for v in sigma if v != junction) + (junction,)
            back = (junction,) + tuple(v for v in tau if v != junction)
            sign = epsilon_sign(front, back, front + back[1:])
            total += sign * base * alpha * b.value_on(tau)
    return total


def wilson_product(a: Cochain, b: Cochain, path: str = "symbolic") -> Cochain:
    """Wilson's cochain product: (a·b)(ν) = ∫_ν Wa ∧ Wb on every (k+l)-simplex ν.

    ``path="symbolic"`` interpolates, wedges and integrates exactly;
    ``path="closed"`` sums ε(σ,τ)·k!l!/(k+l+1)! over the face pairs meeting in
    one vertex.
    """
    _require_same_complex(a.complex, b.complex)
    if path == "symbolic":
        local = _symbolic_value
    elif path == "closed":
        local = _closed_form_value
    else:
        raise ValueError(f"unknown wilson_product path {path!r}")
    n = a.degree + b.degree
    values: Dict[Simplex, Fraction] = {}
    for simplex in a.complex.simplices_of(n):
        value = local(a, b, simplex)
        if value:
            values[simplex] = value
    logger.debug("wilson_product (%s): degree (%d, %d), %d nonzero values", path, a.degree, b.degree, len(values))
    return Cochain(a.complex, n, values)
