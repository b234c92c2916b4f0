"""
Oriented abstract simplicial complexes, chains and cochains over exact rationals.

Storage convention: every simplex is keyed by its canonical form, the
ascending tuple of its vertex ids. An ordering of the same vertices carries
the sign of the permutation that sorts it, so a cochain evaluated on [1, 0]
reads minus its stored value on (0, 1).
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from cochains.errors import ComplexMismatch, DegreeMismatch, DuplicateVertex, SimplexNotInComplex

logger = logging.getLogger(__name__)

Scalar = Fraction
VertexId = int
Simplex = Tuple[int, ...]
ScalarLike = Union[Fraction, int, str]


def as_scalar(value: ScalarLike) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def parse_scalar(text: str) -> Fraction:
    """Parse the serialized "p/q" (or "p") form of a scalar.

    Decimal and exponent notation are rejected so every value on disk is an
    exact rational as written.
    """
    body = text.strip()
    numerator, slash, denominator = body.partition("/")
    try:
        num = int(numerator.strip())
        den = int(denominator.strip()) if slash else 1
    except ValueError:
        raise ValueError(f"invalid scalar {text!r}: expected 'p/q' or an integer") from None
    if den == 0:
        raise ValueError(f"invalid scalar {text!r}: zero denominator")
    return Fraction(num, den)


def format_scalar(value: Fraction) -> str:
    """Serialize a scalar in lowest terms as "p/q", or "p" when integral."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def permutation_sign(ordering: Sequence) -> int:
    """Sign of the permutation that sorts ``ordering`` (items must be distinct)."""
    inversions = 0
    for i, j in itertools.combinations(range(len(ordering)), 2):
        if ordering[i] > ordering[j]:
            inversions += 1
    return -1 if inversions % 2 else 1


def canonicalize(vertices: Sequence[VertexId]) -> Tuple[Simplex, int]:
    """Return the ascending vertex tuple and the parity of the given ordering.

    >>> canonicalize([2, 0, 1])
    ((0, 1, 2), 1)
    >>> canonicalize([1, 0])
    ((0, 1), -1)
    """
    ordering = tuple(vertices)
    if len(set(ordering)) != len(ordering):
        raise DuplicateVertex(ordering)
    return tuple(sorted(ordering)), permutation_sign(ordering)


@dataclass(frozen=True)
class OrientedSimplex:
    """An ordered list of distinct vertices; [v0, ..., vk] has dimension k."""

    vertices: Tuple[VertexId, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if len(set(self.vertices)) != len(self.vertices):
            raise DuplicateVertex(self.vertices)

    @property
    def dimension(self) -> int:
        return len(self.vertices) - 1

    @property
    def canonical(self) -> Tuple[Simplex, int]:
        return canonicalize(self.vertices)

    def __iter__(self) -> Iterator[VertexId]:
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"[{','.join(str(v) for v in self.vertices)}]"


SimplexLike = Union[OrientedSimplex, Sequence[VertexId]]


def as_oriented(simplex: SimplexLike) -> OrientedSimplex:
    if isinstance(simplex, OrientedSimplex):
        return simplex
    return OrientedSimplex(tuple(simplex))


@dataclass(frozen=True)
class SimplicialComplex:
    """A face-closed set of canonical simplices, one frozenset per dimension.

    ``orientations`` records the chosen ordering of every simplex that was
    declared in an order other than ascending; all other simplices are
    oriented by ascending vertex order.
    """

    simplices: Tuple[FrozenSet[Simplex], ...]
    orientations: Mapping[Simplex, Tuple[VertexId, ...]] = field(default_factory=dict, hash=False)

    @classmethod
    def closure(cls, top_simplices: Iterable[Sequence[VertexId]]) -> "SimplicialComplex":
        """Build the complex generated by the listed simplices and all their faces."""
        by_dimension: Dict[int, set] = {}
        orientations: Dict[Simplex, Tuple[VertexId, ...]] = {}
        for ordering in top_simplices:
            ordering = tuple(ordering)
            canonical, _ = canonicalize(ordering)
            if not canonical:
                continue
            if ordering != canonical:
                orientations[canonical] = ordering
            else:
                orientations.pop(canonical, None)
            for size in range(1, len(canonical) + 1):
                faces = by_dimension.setdefault(size - 1, set())
                faces.update(itertools.combinations(canonical, size))
        top = max(by_dimension, default=-1)
        simplices = tuple(frozenset(by_dimension.get(k, ())) for k in range(top + 1))
        logger.debug("Closure built: f-vector %s", [len(s) for s in simplices])
        return cls(simplices=simplices, orientations=orientations)

    @property
    def dimension(self) -> int:
        """Largest dimension with a stored simplex; -1 for the empty complex."""
        return len(self.simplices) - 1

    @cached_property
    def _sorted(self) -> Tuple[Tuple[Simplex, ...], ...]:
        return tuple(tuple(sorted(group)) for group in self.simplices)

    def simplices_of(self, k: int) -> Tuple[Simplex, ...]:
        """Canonical k-simplices in ascending lexicographic order."""
        if 0 <= k <= self.dimension:
            return self._sorted[k]
        return ()

    @property
    def vertices(self) -> Tuple[VertexId, ...]:
        return tuple(s[0] for s in self.simplices_of(0))

    def __contains__(self, simplex: object) -> bool:
        if isinstance(simplex, OrientedSimplex):
            vertices = simplex.vertices
        else:
            vertices = tuple(simplex)
        key = tuple(sorted(vertices))
        k = len(key) - 1
        return 0 <= k <= self.dimension and key in self.simplices[k]

    def chosen_orientation(self, simplex: Simplex) -> OrientedSimplex:
        if simplex not in self:
            raise SimplexNotInComplex(simplex)
        return OrientedSimplex(self.orientations.get(simplex, simplex))

    def faces_of(self, simplex: Simplex, k: int) -> List[Simplex]:
        """The canonical k-faces of a stored simplex."""
        canonical = tuple(sorted(simplex))
        if canonical not in self:
            raise SimplexNotInComplex(simplex)
        return list(itertools.combinations(canonical, k + 1))

    def f_vector(self) -> Tuple[int, ...]:
        return tuple(len(group) for group in self.simplices)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * count for k, count in enumerate(self.f_vector()))


def _require_same_complex(left: SimplicialComplex, right: SimplicialComplex) -> None:
    if left is not right and left != right:
        raise ComplexMismatch("Operands live on different simplicial complexes")


def _fold_terms(complex_: SimplicialComplex, degree: int,
                terms: Iterable[Tuple[SimplexLike, ScalarLike]],
                check_membership: bool = True) -> Dict[Simplex, Fraction]:
    folded: Dict[Simplex, Fraction] = {}
    for ordering, value in terms:
        simplex = as_oriented(ordering)
        if simplex.dimension != degree:
            raise DegreeMismatch(
                f"Simplex {simplex!r} has dimension {simplex.dimension}, expected {degree}"
            )
        canonical, sign = simplex.canonical
        if check_membership and canonical not in complex_:
            raise SimplexNotInComplex(canonical)
        folded[canonical] = folded.get(canonical, Fraction(0)) + sign * as_scalar(value)
    return {key: value for key, value in folded.items() if value != 0}


@dataclass(frozen=True)
class Chain:
    """A finite rational combination of oriented k-simplices of one complex."""

    complex: SimplicialComplex = field(repr=False)
    degree: int
    coefficients: Mapping[Simplex, Fraction] = field(default_factory=dict, hash=False)

    @classmethod
    def from_terms(cls, complex_: SimplicialComplex, degree: int,
                   terms: Iterable[Tuple[SimplexLike, ScalarLike]]) -> "Chain":
        return cls(complex_, degree, _fold_terms(complex_, degree, terms))

    @classmethod
    def from_simplex(cls, complex_: SimplicialComplex, simplex: SimplexLike,
                     coefficient: ScalarLike = 1) -> "Chain":
        simplex = as_oriented(simplex)
        return cls.from_terms(complex_, simplex.dimension, [(simplex, coefficient)])

    @classmethod
    def zero(cls, complex_: SimplicialComplex, degree: int) -> "Chain":
        return cls(complex_, degree, {})

    def is_zero(self) -> bool:
        return not self.coefficients

    def terms(self) -> List[Tuple[Simplex, Fraction]]:
        return sorted(self.coefficients.items())

    def __add__(self, other: "Chain") -> "Chain":
        _require_same_complex(self.complex, other.complex)
        if self.degree != other.degree:
            raise DegreeMismatch(f"Cannot add chains of degree {self.degree} and {other.degree}")
        return Chain(self.complex, self.degree,
                     _fold_terms(self.complex, self.degree,
                                 itertools.chain(self.coefficients.items(), other.coefficients.items()),
                                 check_membership=False))

    def __neg__(self) -> "Chain":
        return Chain(self.complex, self.degree, {s: -c for s, c in self.coefficients.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __mul__(self, scalar: ScalarLike) -> "Chain":
        factor = as_scalar(scalar)
        if factor == 0:
            return Chain.zero(self.complex, self.degree)
        return Chain(self.complex, self.degree, {s: c * factor for s, c in self.coefficients.items()})

    __rmul__ = __mul__


@dataclass(frozen=True)
class Cochain:
    """A k-cochain: rational values on canonical k-simplices, zero elsewhere."""

    complex: SimplicialComplex = field(repr=False)
    degree: int
    values: Mapping[Simplex, Fraction] = field(default_factory=dict, hash=False)

    @classmethod
    def from_values(cls, complex_: SimplicialComplex, degree: int,
                    values: Union[Mapping[SimplexLike, ScalarLike], Iterable[Tuple[SimplexLike, ScalarLike]]]
                    ) -> "Cochain":
        """Build a cochain from values keyed on arbitrary orderings.

        A value given on an odd ordering is stored negated on the canonical
        form; repeated simplices accumulate.
        """
        items = values.items() if isinstance(values, Mapping) else values
        return cls(complex_, degree, _fold_terms(complex_, degree, items))

    @classmethod
    def zero(cls, complex_: SimplicialComplex, degree: int) -> "Cochain":
        return cls(complex_, degree, {})

    @classmethod
    def constant(cls, complex_: SimplicialComplex, value: ScalarLike = 1) -> "Cochain":
        """The 0-cochain taking one value on every vertex."""
        scalar = as_scalar(value)
        if scalar == 0:
            return cls.zero(complex_, 0)
        return cls(complex_, 0, {s: scalar for s in complex_.simplices_of(0)})

    def evaluate(self, target: Union["Chain", SimplexLike]) -> Fraction:
        return evaluate(self, target)

    def value_on(self, simplex: Simplex) -> Fraction:
        """Stored value on a canonical simplex (0 when absent)."""
        return self.values.get(simplex, Fraction(0))

    def is_zero(self) -> bool:
        return not self.values

    def items(self) -> List[Tuple[Simplex, Fraction]]:
        return sorted(self.values.items())

    def restrict_to(self, simplex: SimplexLike) -> "Cochain":
        """Keep only the values on faces of ``simplex``."""
        support = set(as_oriented(simplex).vertices)
        return Cochain(self.complex, self.degree,
                       {s: v for s, v in self.values.items() if support.issuperset(s)})

    def __add__(self, other: "Cochain") -> "Cochain":
        _require_same_complex(self.complex, other.complex)
        if self.degree != other.degree:
            raise DegreeMismatch(f"Cannot add cochains of degree {self.degree} and {other.degree}")
        merged = dict(self.values)
        for simplex, value in other.values.items():
            merged[simplex] = merged.get(simplex, Fraction(0)) + value
        return Cochain(self.complex, self.degree, {s: v for s, v in merged.items() if v != 0})

    def __neg__(self) -> "Cochain":
        return Cochain(self.complex, self.degree, {s: -v for s, v in self.values.items()})

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def __mul__(self, scalar: ScalarLike) -> "Cochain":
        factor = as_scalar(scalar)
        if factor == 0:
            return Cochain.zero(self.complex, self.degree)
        return Cochain(self.complex, self.degree, {s: v * factor for s, v in self.values.items()})

    __rmul__ = __mul__


def evaluate(cochain: Cochain, target: Union[Chain, SimplexLike]) -> Fraction:
    """Evaluate a cochain on a chain or on an ordered simplex.

    Orderings are folded through their parity; simplices the cochain does not
    know evaluate to 0.
    """
    if isinstance(target, Chain):
        _require_same_complex(cochain.complex, target.complex)
        if target.degree != cochain.degree:
            raise DegreeMismatch(
                f"Cannot evaluate a {cochain.degree}-cochain on a {target.degree}-chain"
            )
        return sum((c * cochain.value_on(s) for s, c in target.coefficients.items()), Fraction(0))
    simplex = as_oriented(target)
    if simplex.dimension != cochain.degree:
        raise DegreeMismatch(
            f"Cannot evaluate a {cochain.degree}-cochain on the {simplex.dimension}-simplex {simplex!r}"
        )
    canonical, sign = simplex.canonical
    return sign * cochain.value_on(canonical)


def boundary(target: Union[Chain, SimplexLike], complex_: Optional[SimplicialComplex] = None) -> Chain:
    """The boundary of an oriented simplex, extended linearly to chains.

    ∂[v0 ... vk] = Σ_i (-1)^i [v0 ... v̂i ... vk]; each face is folded to its
    canonical form with the parity of the remaining ordering.
    """
    if isinstance(target, Chain):
        if target.degree < 1:
            raise DegreeMismatch("The boundary of a 0-chain is not defined")
        result = Chain.zero(target.complex, target.degree - 1)
        for simplex, coefficient in target.coefficients.items():
            result = result + boundary(simplex, target.complex) * coefficient
        return result
    if complex_ is None:
        raise TypeError("boundary of a simplex needs the complex it lives in")
    simplex = as_oriented(target)
    if simplex.dimension < 1:
        raise DegreeMismatch(f"The boundary of the vertex {simplex!r} is not defined")
    if simplex not in complex_:
        raise SimplexNotInComplex(simplex.vertices)
    vertices = simplex.vertices
    terms = [(vertices[:i] + vertices[i + 1:], (-1) ** i) for i in range(len(vertices))]
    return Chain.from_terms(complex_, simplex.dimension - 1, terms)
