"""
Unit tests for simplices, complexes, chains and cochains.
"""
import itertools
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

# Add the repository root to path to import the modules
parent_dir = str(Path(__file__).parent.parent.parent)
if parent_dir not in sys.path:
    sys.path.append(parent_dir)

from cochains.errors import ComplexMismatch, DegreeMismatch, DuplicateVertex, SimplexNotInComplex
from cochains.simplicial_core import (
    Chain,
    Cochain,
    OrientedSimplex,
    SimplicialComplex,
    boundary,
    canonicalize,
    evaluate,
    format_scalar,
    parse_scalar,
    permutation_sign,
)

fractions = st.fractions(max_denominator=1000).filter(lambda q: abs(q.numerator) < 10 ** 6)


class TestScalars:
    """Test cases for exact rational scalars and their serialized form."""

    def test_format_lowest_terms(self):
        """Scalars serialize as p/q in lowest terms, integers without a denominator."""
        assert format_scalar(Fraction(6, 4)) == "3/2"
        assert format_scalar(Fraction(-2, 4)) == "-1/2"
        assert format_scalar(Fraction(4, 2)) == "2"
        assert format_scalar(Fraction(0)) == "0"

    def test_parse_integer_and_fraction(self):
        """Both "p" and "p/q" forms are accepted."""
        assert parse_scalar("7") == 7
        assert parse_scalar("-3/9") == Fraction(-1, 3)

    @pytest.mark.parametrize("text", ["0.5", "1e3", "1/0", "", "a/b", "1/2/3"])
    def test_parse_rejects_inexact_or_invalid(self, text):
        """Decimal notation and zero denominators are rejected."""
        with pytest.raises(ValueError):
            parse_scalar(text)

    @given(fractions)
    def test_format_parse_round_trip(self, value):
        """Every scalar survives serialization exactly."""
        assert parse_scalar(format_scalar(value)) == value

    @given(fractions, fractions, fractions)
    def test_field_axioms(self, x, y, z):
        """Addition and multiplication are exact field operations."""
        assert (x + y) + z == x + (y + z)
        assert x * (y + z) == x * y + x * z
        assert x * y == y * x


class TestCanonicalize:
    """Test cases for canonical forms and ordering parity."""

    @pytest.mark.parametrize("ordering, expected", [
        ([0, 1, 2], ((0, 1, 2), 1)),
        ([1, 0, 2], ((0, 1, 2), -1)),
        ([2, 0, 1], ((0, 1, 2), 1)),
        ([2, 1, 0], ((0, 1, 2), -1)),
        ([5], ((5,), 1)),
    ])
    def test_canonical_form_and_sign(self, ordering, expected):
        """Canonical form is the ascending tuple with the parity of the ordering."""
        assert canonicalize(ordering) == expected

    def test_duplicate_vertex(self):
        """Repeated vertices are rejected."""
        with pytest.raises(DuplicateVertex):
            canonicalize([0, 1, 0])
        with pytest.raises(DuplicateVertex):
            OrientedSimplex((3, 3))

    @given(st.permutations(list(range(6))))
    def test_idempotent(self, ordering):
        """Canonicalizing a canonical form is the identity with sign +1."""
        canonical, _ = canonicalize(ordering)
        assert canonicalize(canonical) == (canonical, 1)

    @given(st.permutations(list(range(5))), st.integers(0, 3))
    def test_transposition_flips_sign(self, ordering, i):
        """Swapping two adjacent vertices flips the parity."""
        swapped = list(ordering)
        swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
        assert permutation_sign(swapped) == -permutation_sign(ordering)

    def test_oriented_simplex_repr(self):
        """Oriented simplices print as bracketed vertex lists."""
        simplex = OrientedSimplex((2, 0))
        assert repr(simplex) == "[2,0]"
        assert simplex.dimension == 1
        assert simplex.canonical == ((0, 2), -1)


class TestSimplicialComplex:
    """Test cases for complexes built by closure."""

    def test_triangle_closure(self, triangle):
        """The triangle closure has 3 vertices, 3 edges and 1 face."""
        assert triangle.f_vector() == (3, 3, 1)
        assert triangle.dimension == 2
        assert triangle.euler_characteristic() == 1
        assert triangle.simplices_of(1) == ((0, 1), (0, 2), (1, 2))

    def test_tetrahedron_closure(self, tetrahedron):
        """The tetrahedron closure has f-vector 4/6/4/1."""
        assert tetrahedron.f_vector() == (4, 6, 4, 1)
        assert tetrahedron.euler_characteristic() == 1

    def test_triangle_boundary(self, triangle_boundary):
        """The boundary of a triangle is a circle with χ = 0."""
        assert triangle_boundary.f_vector() == (3, 3)
        assert triangle_boundary.euler_characteristic() == 0
        assert (0, 1, 2) not in triangle_boundary

    def test_path_complex(self, path_complex):
        """Two edges sharing a vertex, without the edge [0,2]."""
        assert path_complex.simplices_of(1) == ((0, 1), (1, 2))
        assert (0, 2) not in path_complex

    def test_empty_complex(self):
        """An empty list generates the empty complex of dimension -1."""
        empty = SimplicialComplex.closure([])
        assert empty.dimension == -1
        assert empty.simplices_of(0) == ()
        assert empty.euler_characteristic() == 0

    def test_closure_rejects_repeated_vertex(self):
        """A generating simplex with a repeated vertex is rejected."""
        with pytest.raises(DuplicateVertex):
            SimplicialComplex.closure([[0, 1, 1]])

    def test_membership_ignores_ordering(self, triangle):
        """Membership is decided on the canonical form."""
        assert (2, 0) in triangle
        assert OrientedSimplex((2, 1, 0)) in triangle
        assert (0, 3) not in triangle

    def test_chosen_orientation(self):
        """The listed order of a generating simplex is its chosen orientation."""
        complex_ = SimplicialComplex.closure([[1, 0, 2]])
        assert complex_.chosen_orientation((0, 1, 2)).vertices == (1, 0, 2)
        assert complex_.chosen_orientation((0, 1)).vertices == (0, 1)
        with pytest.raises(SimplexNotInComplex):
            complex_.chosen_orientation((0, 3))

    def test_faces_of(self, tetrahedron):
        """The k-faces of a stored simplex, canonical and in order."""
        assert tetrahedron.faces_of((0, 1, 2), 1) == [(0, 1), (0, 2), (1, 2)]
        assert len(tetrahedron.faces_of((0, 1, 2, 3), 2)) == 4


class TestChains:
    """Test cases for chains and the boundary operator."""

    def test_boundary_of_triangle(self, triangle):
        """∂[0,1,2] = [1,2] - [0,2] + [0,1]."""
        assert boundary((0, 1, 2), triangle).terms() == [((0, 1), 1), ((0, 2), -1), ((1, 2), 1)]

    def test_boundary_folds_orientation(self, triangle):
        """∂[1,0] = [0] - [1]."""
        assert boundary((1, 0), triangle).terms() == [((0,), 1), ((1,), -1)]

    def test_boundary_squared_zero(self, four_simplex):
        """∂∂ vanishes on every simplex of dimension at least 2, in every ordering."""
        for k in range(2, 5):
            for simplex in four_simplex.simplices_of(k):
                for ordering in itertools.permutations(simplex):
                    assert boundary(boundary(ordering, four_simplex)).is_zero()

    def test_boundary_squared_zero_on_random_complexes(self, make_complex, rng):
        """∂∂ vanishes on random complexes, in chosen and in shuffled orderings."""
        checked = 0
        for _ in range(20):
            complex_ = make_complex(max_vertices=7, max_dimension=4)
            for k in range(2, complex_.dimension + 1):
                for simplex in complex_.simplices_of(k):
                    ordering = list(complex_.chosen_orientation(simplex).vertices)
                    assert boundary(boundary(tuple(ordering), complex_)).is_zero()
                    rng.shuffle(ordering)
                    assert boundary(boundary(tuple(ordering), complex_)).is_zero()
                    checked += 1
        assert checked > 0

    def test_boundary_errors(self, triangle):
        """Vertices have no boundary and simplices must belong to the complex."""
        with pytest.raises(DegreeMismatch):
            boundary((0,), triangle)
        with pytest.raises(SimplexNotInComplex):
            boundary((0, 3), triangle)
        with pytest.raises(TypeError):
            boundary((0, 1))

    def test_chain_arithmetic(self, triangle):
        """Opposite orientations cancel and scalars multiply coefficients."""
        c = Chain.from_simplex(triangle, (0, 1)) + Chain.from_simplex(triangle, (1, 0))
        assert c.is_zero()
        doubled = Chain.from_simplex(triangle, (1, 2), 3) * Fraction(1, 3)
        assert doubled.terms() == [((1, 2), 1)]
        with pytest.raises(DegreeMismatch):
            Chain.from_simplex(triangle, (0, 1)) + Chain.from_simplex(triangle, (0,))


class TestCochains:
    """Test cases for cochains and evaluation."""

    def test_from_values_folds_parity(self, triangle):
        """A value given on [1,0] is stored negated on [0,1]."""
        a = Cochain.from_values(triangle, 1, {(1, 0): 3, (0, 2): "1/2"})
        assert a.value_on((0, 1)) == -3
        assert a.value_on((0, 2)) == Fraction(1, 2)
        assert a.value_on((1, 2)) == 0

    def test_from_values_accumulates(self, triangle):
        """Repeated simplices accumulate their values."""
        a = Cochain.from_values(triangle, 1, [((0, 1), 2), ((1, 0), 5)])
        assert a.value_on((0, 1)) == -3

    def test_from_values_errors(self, triangle):
        """Wrong degree, unknown simplex and repeated vertex are rejected."""
        with pytest.raises(DegreeMismatch):
            Cochain.from_values(triangle, 1, {(0, 1, 2): 1})
        with pytest.raises(SimplexNotInComplex):
            Cochain.from_values(triangle, 1, {(0, 3): 1})
        with pytest.raises(DuplicateVertex):
            Cochain.from_values(triangle, 1, {(0, 0): 1})

    def test_skew_evaluation(self, tetrahedron, make_cochain):
        """Evaluation on a permuted ordering changes sign with the permutation."""
        a = make_cochain(tetrahedron, 2)
        for simplex in tetrahedron.simplices_of(2):
            base = evaluate(a, simplex)
            for perm in itertools.permutations(range(3)):
                ordering = tuple(simplex[p] for p in perm)
                assert evaluate(a, ordering) == permutation_sign(perm) * base

    def test_evaluate_on_chain(self, triangle):
        """Evaluation is linear in the chain."""
        a = Cochain.from_values(triangle, 1, {(0, 1): 1, (0, 2): 2, (1, 2): 4})
        assert evaluate(a, boundary((0, 1, 2), triangle)) == 4 - 2 + 1

    def test_evaluate_degree_mismatch(self, triangle):
        """A cochain only evaluates on simplices and chains of its degree."""
        a = Cochain.zero(triangle, 1)
        with pytest.raises(DegreeMismatch):
            evaluate(a, (0, 1, 2))

    def test_complex_mismatch(self, triangle, edge):
        """Cochains on different complexes cannot be combined."""
        with pytest.raises(ComplexMismatch):
            Cochain.constant(triangle) + Cochain.constant(edge)

    def test_arithmetic_and_restriction(self, triangle):
        """Sums drop cancelled values; restriction keeps faces of one simplex."""
        a = Cochain.from_values(triangle, 0, {(0,): 1, (1,): 2, (2,): 3})
        assert (a - a).is_zero()
        assert (a * 2).value_on((2,)) == 6
        assert (-a).value_on((1,)) == -2
        assert a.restrict_to((0, 1)).items() == [((0,), 1), ((1,), 2)]
        assert Cochain.constant(triangle, 0).is_zero()
