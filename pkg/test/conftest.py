"""
Shared fixtures and configurations for the Discrete Exterior Calculus Tool tests.
"""
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add the repository root to path to import the modules
parent_dir = str(Path(__file__).parent.parent)
if parent_dir not in sys.path:
    sys.path.append(parent_dir)

from cochains.simplicial_core import Cochain, SimplicialComplex

TEST_SEED = 42

# Complexes used throughout the suite
EDGE = [[0, 1]]
TRIANGLE = [[0, 1, 2]]
TETRAHEDRON = [[0, 1, 2, 3]]
FOUR_SIMPLEX = [[0, 1, 2, 3, 4]]
TRIANGLE_BOUNDARY = [[0, 1], [1, 2], [0, 2]]
PATH = [[0, 1], [1, 2]]


@pytest.fixture
def edge():
    """The closure of a single edge [0,1]."""
    return SimplicialComplex.closure(EDGE)


@pytest.fixture
def triangle():
    """The closure of the triangle [0,1,2]."""
    return SimplicialComplex.closure(TRIANGLE)


@pytest.fixture
def tetrahedron():
    """The closure of the tetrahedron [0,1,2,3]."""
    return SimplicialComplex.closure(TETRAHEDRON)


@pytest.fixture
def four_simplex():
    """The closure of the 4-simplex [0,1,2,3,4]."""
    return SimplicialComplex.closure(FOUR_SIMPLEX)


@pytest.fixture
def triangle_boundary():
    """Three edges of a triangle without its interior."""
    return SimplicialComplex.closure(TRIANGLE_BOUNDARY)


@pytest.fixture
def path_complex():
    """Two edges [0,1] and [1,2] meeting at vertex 1."""
    return SimplicialComplex.closure(PATH)


@pytest.fixture
def rng():
    """Seeded random stream so randomized tests are reproducible."""
    return random.Random(TEST_SEED)


def random_fraction(rng):
    return Fraction(rng.randint(-100, 100), rng.randint(1, 100))


@pytest.fixture
def make_cochain(rng):
    """Factory for random rational cochains on a complex."""
    def _make(complex_, degree):
        return Cochain.from_values(complex_, degree,
                                   {s: random_fraction(rng) for s in complex_.simplices_of(degree)})
    return _make


@pytest.fixture
def make_complex(rng):
    """Factory for closures of a few random simplices of dimension at most max_dimension."""
    def _make(max_vertices=6, max_dimension=3):
        vertices = list(range(rng.randint(3, max_vertices)))
        tops = []
        for _ in range(rng.randint(1, 4)):
            size = rng.randint(1, min(max_dimension + 1, len(vertices)))
            tops.append(rng.sample(vertices, size))
        return SimplicialComplex.closure(tops + [[v] for v in vertices])
    return _make


@pytest.fixture
def write_json(tmp_path):
    """Write a JSON document under tmp_path and return its path as a string."""
    def _write(name, document):
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return str(path)
    return _write
