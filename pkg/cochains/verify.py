"""
Randomized property suites over a complex, as run by ``dec verify``.

Each property draws its own random stream from ``(seed, property name)``, so a
report does not depend on which properties ran before it. Random cochains take
numerators uniformly from [-100, 100] and denominators from [1, 100].
"""

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from cochains.maps import compose, identity, pullback, random_simplicial_map
from cochains.operators import WedgeMethod, cup, d, wedge, wedge_avg, wedge_perm
from cochains.simplicial_core import (
    Cochain,
    OrientedSimplex,
    Simplex,
    SimplicialComplex,
    boundary,
    canonicalize,
    evaluate,
    format_scalar,
    parse_scalar,
    permutation_sign,
)
from cochains.whitney_oracle import wilson_product

logger = logging.getLogger(__name__)

NUMERATOR_RANGE = (-100, 100)
DENOMINATOR_RANGE = (1, 100)

PASS = "PASS"
FAIL = "FAIL"
SKIP = "SKIP"


def random_scalar(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(*NUMERATOR_RANGE), rng.randint(*DENOMINATOR_RANGE))


def random_cochain(complex_: SimplicialComplex, degree: int, rng: random.Random) -> Cochain:
    """A cochain with a random rational value on every simplex of the degree."""
    return Cochain.from_values(complex_, degree,
                               {s: random_scalar(rng) for s in complex_.simplices_of(degree)})


@dataclass(frozen=True)
class Witness:
    """A minimal reproducing input: the failing simplex and the inputs restricted to it."""

    simplex: Simplex
    inputs: Tuple[Cochain, ...]
    detail: str


@dataclass
class PropertyResult:
    name: str
    status: str
    checks: int = 0
    witness: Optional[Witness] = None


@dataclass
class VerificationReport:
    seed: int
    trials: int
    max_degree: int
    results: List[PropertyResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.status != FAIL for result in self.results)

    @property
    def failures(self) -> List[PropertyResult]:
        return [result for result in self.results if result.status == FAIL]


class PropertyFailure(Exception):
    def __init__(self, witness: Witness):
        self.witness = witness
        super().__init__(witness.detail)


def _first_difference(left: Cochain, right: Cochain) -> Optional[Simplex]:
    for simplex in sorted(set(left.values) | set(right.values)):
        if left.value_on(simplex) != right.value_on(simplex):
            return simplex
    return None


def _expect_equal(left: Cochain, right: Cochain, inputs: Sequence[Cochain], detail: str) -> None:
    simplex = _first_difference(left, right)
    if simplex is not None:
        raise PropertyFailure(Witness(
            simplex,
            tuple(c.restrict_to(simplex) for c in inputs),
            f"{detail}: {format_scalar(left.value_on(simplex))} != {format_scalar(right.value_on(simplex))}",
        ))


class PropertySuite:
    """Runs every property on one complex and collects a VerificationReport."""

    def __init__(self, complex_: SimplicialComplex, trials: int = 50, seed: int = 42,
                 max_degree: Optional[int] = None):
        self.complex = complex_
        self.trials = trials
        self.seed = seed
        top = complex_.dimension
        self.max_degree = top if max_degree is None else max(-1, min(max_degree, top))
        self.properties: List[Tuple[str, Callable[[random.Random], int]]] = [
            ("scalar_field_axioms", self.check_scalar_field_axioms),
            ("canonicalize_idempotent", self.check_canonicalize_idempotent),
            ("evaluation_skew_symmetry", self.check_evaluation_skew_symmetry),
            ("boundary_squared_zero", self.check_boundary_squared_zero),
            ("d_squared_zero", self.check_d_squared_zero),
            ("wedge_method_equivalence", self.check_wedge_method_equivalence),
            ("wilson_oracle_equivalence", self.check_wilson_oracle_equivalence),
            ("anticommutativity", self.check_anticommutativity),
            ("bilinearity", self.check_bilinearity),
            ("unit", self.check_unit),
            ("leibniz_rule", self.check_leibniz_rule),
            ("cup_leibniz_rule", self.check_cup_leibniz_rule),
            ("naturality_of_d", self.check_naturality_of_d),
            ("naturality_of_wedge", self.check_naturality_of_wedge),
            ("functoriality", self.check_functoriality),
        ]

    def degree_pairs(self, extra: int = 0) -> List[Tuple[int, int]]:
        """Pairs (k, l) with k + l + extra within both max_degree and the complex."""
        bound = min(self.max_degree, self.complex.dimension - extra)
        return [(k, l) for k in range(bound + 1) for l in range(bound + 1 - k)]

    def run(self) -> VerificationReport:
        report = VerificationReport(self.seed, self.trials, self.max_degree)
        for name, check in self.properties:
            rng = random.Random(f"{self.seed}:{name}")
            try:
                checks = check(rng)
            except PropertyFailure as failure:
                logger.debug("Property %s failed: %s", name, failure.witness.detail)
                report.results.append(PropertyResult(name, FAIL, witness=failure.witness))
                continue
            report.results.append(PropertyResult(name, PASS if checks else SKIP, checks))
        return report

    # --- simplicial core ------------------------------------------------

    def check_scalar_field_axioms(self, rng: random.Random) -> int:
        checks = 0
        for _ in range(self.trials):
            x, y, z = random_scalar(rng), random_scalar(rng), random_scalar(rng)
            ok = ((x + y) + z == x + (y + z) and (x * y) * z == x * (y * z)
                  and x + y == y + x and x * y == y * x and x * (y + z) == x * y + x * z
                  and parse_scalar(format_scalar(x)) == x)
            if not ok:
                raise PropertyFailure(Witness((), (), f"field axioms fail for {x}, {y}, {z}"))
            checks += 1
        return checks

    def check_canonicalize_idempotent(self, rng: random.Random) -> int:
        checks = 0
        for k in range(self.complex.dimension + 1):
            for simplex in self.complex.simplices_of(k):
                shuffled = list(simplex)
                rng.shuffle(shuffled)
                canonical, _ = canonicalize(shuffled)
                again, sign = canonicalize(canonical)
                if again != canonical or sign != 1:
                    raise PropertyFailure(Witness(simplex, (), f"canonical form of {shuffled} is not stable"))
                checks += 1
        return checks

    def check_evaluation_skew_symmetry(self, rng: random.Random) -> int:
        checks = 0
        for k in range(self.max_degree + 1):
            for _ in range(self.trials):
                a = random_cochain(self.complex, k, rng)
                simplex = rng.choice(self.complex.simplices_of(k))
                base = evaluate(a, simplex)
                for perm in itertools.permutations(range(k + 1)):
                    ordering = tuple(simplex[p] for p in perm)
                    if evaluate(a, ordering) != permutation_sign(perm) * base:
                        raise PropertyFailure(Witness(simplex, (a.restrict_to(simplex),),
                                                      f"evaluation on {list(ordering)} is not skew"))
                checks += 1
        return checks

    def check_boundary_squared_zero(self, rng: random.Random) -> int:
        checks = 0
        for k in range(2, self.complex.dimension + 1):
            for simplex in self.complex.simplices_of(k):
                ordering = self.complex.chosen_orientation(simplex)
                if not boundary(boundary(ordering, self.complex)).is_zero():
                    raise PropertyFailure(Witness(simplex, (), "∂∂ is not zero"))
                checks += 1
        return checks

    # --- operators ------------------------------------------------------

    def check_d_squared_zero(self, rng: random.Random) -> int:
        checks = 0
        for k in range(min(self.max_degree, self.complex.dimension - 2) + 1):
            for _ in range(self.trials):
                a = random_cochain(self.complex, k, rng)
                _expect_equal(d(d(a)), Cochain.zero(self.complex, k + 2), [a], f"d(d a) for degree {k}")
                checks += 1
        return checks

    def check_wedge_method_equivalence(self, rng: random.Random) -> int:
        checks = 0
        for k, l in self.degree_pairs():
            for _ in range(self.trials):
                a, b = random_cochain(self.complex, k, rng), random_cochain(self.complex, l, rng)
                reference = wedge_perm(a, b)
                _expect_equal(wedge(a, b), reference, [a, b], f"default wedge vs perm, degrees ({k},{l})")
                _expect_equal(wedge_avg(a, b, WedgeMethod.AverageOuterLeft), reference, [a, b],
                              f"avg-left vs perm, degrees ({k},{l})")
                _expect_equal(wedge_avg(a, b, WedgeMethod.AverageOuterRight), reference, [a, b],
                              f"avg-right vs perm, degrees ({k},{l})")
                checks += 1
        return checks

    def check_wilson_oracle_equivalence(self, rng: random.Random) -> int:
        checks = 0
        for k, l in self.degree_pairs():
            for _ in range(self.trials):
                a, b = random_cochain(self.complex, k, rng), random_cochain(self.complex, l, rng)
                symbolic = wilson_product(a, b)
                _expect_equal(symbolic, wedge_perm(a, b), [a, b], f"Whitney integral vs perm, degrees ({k},{l})")
                _expect_equal(wilson_product(a, b, path="closed"), symbolic, [a, b],
                              f"closed form vs symbolic, degrees ({k},{l})")
                checks += 1
        return checks

    def check_anticommutativity(self, rng: random.Random) -> int:
        checks = 0
        for k, l in self.degree_pairs():
            for _ in range(self.trials):
                a, b = random_cochain(self.complex, k, rng), random_cochain(self.complex, l, rng)
                _expect_equal(wedge(a, b), wedge(b, a) * (-1) ** (k * l), [a, b],
                              f"a∧b vs (-1)^kl b∧a, degrees ({k},{l})")
                checks += 1
        return checks

    def check_bilinearity(self, rng: random.Random) -> int:
        checks = 0
        for k, l in self.degree_pairs():
            for _ in range(self.trials):
                a, a2 = random_cochain(self.complex, k, rng), random_cochain(self.complex, k, rng)
                b = random_cochain(self.complex, l, rng)
                c = random_scalar(rng)
                _expect_equal(wedge(a + a2, b), wedge(a, b) + wedge(a2, b), [a, a2, b],
                              f"additivity in the first slot, degrees ({k},{l})")
                _expect_equal(wedge(a, b * c), wedge(a, b) * c, [a, b],
                              f"homogeneity in the second slot, degrees ({k},{l})")
                _expect_equal(wedge(a * c, b), wedge(a, b) * c, [a, b],
                              f"homogeneity in the first slot, degrees ({k},{l})")
                checks += 1
        return checks

    def check_unit(self, rng: random.Random) -> int:
        checks = 0
        if self.max_degree < 0:
            return 0
        one = Cochain.constant(self.complex, 1)
        for l in range(self.max_degree + 1):
            for _ in range(self.trials):
                b = random_cochain(self.complex, l, rng)
                _expect_equal(wedge(one, b), b, [one, b], f"1∧b vs b, degree {l}")
                checks += 1
        return checks

    def check_leibniz_rule(self, rng: random.Random) -> int:
        checks = 0
        for k, l in self.degree_pairs(extra=1):
            for _ in range(self.trials):
                a, b = random_cochain(self.complex, k, rng), random_cochain(self.complex, l, rng)
                _expect_equal(d(wedge(a, b)), wedge(d(a), b) + wedge(a, d(b)) * (-1) ** k, [a, b],
                              f"d(a∧b) vs da∧b + (-1)^k a∧db, degrees ({k},{l})")
                checks += 1
        return checks

    def check_cup_leibniz_rule(self, rng: random.Random) -> int:
        checks = 0
        for k, l in self.degree_pairs(extra=1):
            for _ in range(self.trials):
                a, b = random_cochain(self.complex, k, rng), random_cochain(self.complex, l, rng)
                simplex = rng.choice(self.complex.simplices_of(k + l + 1))
                ordering = list(simplex)
                rng.shuffle(ordering)
                left = cup(a, b).coboundary_on(ordering)
                right = cup(d(a), b).evaluate(ordering) + (-1) ** k * cup(a, d(b)).evaluate(ordering)
                if left != right:
                    raise PropertyFailure(Witness(simplex, (a.restrict_to(simplex), b.restrict_to(simplex)),
                                                  f"cup Leibniz rule on {ordering}: "
                                                  f"{format_scalar(left)} != {format_scalar(right)}"))
                checks += 1
        return checks

    # --- maps -----------------------------------------------------------

    def _random_map(self, rng: random.Random):
        return random_simplicial_map(self.complex, self.complex, rng)

    def check_naturality_of_d(self, rng: random.Random) -> int:
        checks = 0
        for k in range(min(self.max_degree, self.complex.dimension - 1) + 1):
            for _ in range(self.trials):
                f = self._random_map(rng)
                a = random_cochain(self.complex, k, rng)
                _expect_equal(pullback(f, d(a)), d(pullback(f, a)), [a],
                              f"f*(da) vs d(f*a) for degree {k}, vertex map {f.vertex_map}")
                checks += 1
        return checks

    def check_naturality_of_wedge(self, rng: random.Random) -> int:
        checks = 0
        for k, l in self.degree_pairs():
            for _ in range(self.trials):
                f = self._random_map(rng)
                a, b = random_cochain(self.complex, k, rng), random_cochain(self.complex, l, rng)
                _expect_equal(pullback(f, wedge(a, b)), wedge(pullback(f, a), pullback(f, b)), [a, b],
                              f"f*(a∧b) vs f*a∧f*b, degrees ({k},{l}), vertex map {f.vertex_map}")
                checks += 1
        return checks

    def check_functoriality(self, rng: random.Random) -> int:
        checks = 0
        if self.max_degree < 0:
            return 0
        same = identity(self.complex)
        for k in range(self.max_degree + 1):
            for _ in range(self.trials):
                f, g = self._random_map(rng), self._random_map(rng)
                a = random_cochain(self.complex, k, rng)
                _expect_equal(pullback(compose(f, g), a), pullback(f, pullback(g, a)), [a],
                              f"(g∘f)* vs f*∘g* for degree {k}")
                _expect_equal(pullback(same, a), a, [a], f"identity pullback for degree {k}")
                checks += 1
        return checks


def run_verification(complex_: SimplicialComplex, trials: int = 50, seed: int = 42,
                     max_degree: Optional[int] = None) -> VerificationReport:
    return PropertySuite(complex_, trials, seed, max_degree).run()
