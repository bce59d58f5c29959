"""Randomized checks of the vertex Poisson axioms on a jet ring."""

import logging
import random
from fractions import Fraction
from math import comb, factorial
from typing import Callable, List, Optional, Tuple

from tqdm import tqdm

from ..config import DEFAULT_SEED
from ..models.polynomial import Monomial, Polynomial, VarId
from ..models.reports import AxiomFailure, AxiomReport, AxiomResult
from ..models.ring import JetRing, PoissonStructure
from ..utils.budget import Budget
from .groebner import member
from .jet import translate, translate_power, with_level
from .vpa import mode_product

logger = logging.getLogger(__name__)

AXIOMS = ("PVA-1", "PVA-2", "PVA-3", "PVA-4", "PVA-5")

# (lhs, rhs, a, b, c); c is None for two-operand axioms
Sample = Tuple[Polynomial, Polynomial, Polynomial, Polynomial, Optional[Polynomial]]


def random_jet_polynomial(
    rng: random.Random,
    variables: List[VarId],
    max_degree: int = 2,
    max_terms: int = 3,
) -> Polynomial:
    """A small random polynomial with integer coefficients in [-3, 3]."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        powers = {}
        for _ in range(rng.randint(0, max_degree)):
            v = rng.choice(variables)
            powers[v] = powers.get(v, 0) + 1
        coeff = rng.choice([-3, -2, -1, 1, 2, 3])
        m = Monomial.from_mapping(powers)
        terms[m] = terms.get(m, 0) + coeff
    p = Polynomial(terms)
    return p if p else Polynomial.variable(rng.choice(variables))


def _negative(a: Polynomial, i: int, c: Polynomial) -> Polynomial:
    # a_(-i-1) c = T^i a / i! * c
    return translate_power(a, i).scale(Fraction(1, factorial(i))) * c


def _mode_bound(a: Polynomial, b: Polynomial) -> int:
    """a_(m) b vanishes for m above this bound."""
    return a.jet_depth + b.jet_depth


class _AxiomSampler:
    """Draws operands and evaluates both sides of each axiom."""

    def __init__(self, jr: JetRing, ps: PoissonStructure, seed: int) -> None:
        self.jr = jr
        self.ps = ps
        self.rng = random.Random(seed)
        self.variables = list(jr.jet_vars)
        self.base = [Polynomial.variable(v) for v in jr.base.vars]

    def operand(self) -> Polynomial:
        return random_jet_polynomial(self.rng, self.variables)

    def pair(self, index: int) -> Tuple[Polynomial, Polynomial]:
        """Base variable pairs first, then random operands."""
        r = len(self.base)
        if index < r * r:
            return self.base[index // r], self.base[index % r]
        return self.operand(), self.operand()

    def mode(self) -> int:
        return self.rng.randint(0, self.jr.level)

    def op(self, a: Polynomial, m: int, b: Polynomial) -> Polynomial:
        return mode_product(self.ps, a, m, b)

    def translation(self, index: int) -> Sample:
        # (Ta)_(m) b = -m a_(m-1) b
        a, b = self.pair(index)
        m = self.mode()
        lhs = self.op(translate(a), m, b)
        rhs = self.op(a, m - 1, b).scale(-m) if m else Polynomial.zero()
        return lhs, rhs, a, b, None

    def skew_symmetry(self, index: int) -> Sample:
        # a_(m) b = sum_j (-1)^(m+j+1) T^j (b_(m+j) a) / j!
        a, b = self.pair(index)
        m = self.mode()
        lhs = self.op(a, m, b)
        rhs = Polynomial.zero()
        for j in range(_mode_bound(b, a) - m + 1):
            term = translate_power(self.op(b, m + j, a), j)
            rhs = rhs + term.scale(Fraction((-1) ** (m + j + 1), factorial(j)))
        return lhs, rhs, a, b, None

    def commutator(self, index: int) -> Sample:
        # a_(m) b_(p) c - b_(p) a_(m) c = sum_j C(m, j) (a_(j) b)_(m+p-j) c
        a, b = self.pair(index)
        c = self.operand()
        m, p = self.mode(), self.mode()
        lhs = self.op(a, m, self.op(b, p, c)) - self.op(b, p, self.op(a, m, c))
        rhs = Polynomial.zero()
        for j in range(m + 1):
            rhs = rhs + self.op(self.op(a, j, b), m + p - j, c).scale(comb(m, j))
        return lhs, rhs, a, b, c

    def left_leibniz(self, index: int) -> Sample:
        # a_(m)(b c) = (a_(m) b) c + b (a_(m) c)
        a, b = self.pair(index)
        c = self.operand()
        m = self.mode()
        lhs = self.op(a, m, b * c)
        rhs = self.op(a, m, b) * c + b * self.op(a, m, c)
        return lhs, rhs, a, b, c

    def right_leibniz(self, index: int) -> Sample:
        # (a b)_(m) c = sum_i a_(-i-1) b_(m+i) c + b_(-i-1) a_(m+i) c
        a, b = self.pair(index)
        c = self.operand()
        m = self.mode()
        lhs = self.op(a * b, m, c)
        rhs = Polynomial.zero()
        bound = max(_mode_bound(a, c), _mode_bound(b, c)) - m
        for i in range(bound + 1):
            rhs = rhs + _negative(a, i, self.op(b, m + i, c))
            rhs = rhs + _negative(b, i, self.op(a, m + i, c))
        return lhs, rhs, a, b, c


def _holds(jr: JetRing, difference: Polynomial, budget: Optional[Budget]) -> bool:
    """Zero modulo the jet relations, at a level that covers the difference."""
    if difference.is_zero:
        return True
    if not jr.base.relations:
        return False
    ring = with_level(jr, max(jr.level, difference.jet_depth))
    return member(difference, ring.jet_relations, budget)


def pva_axiom_suite(
    jr: JetRing,
    ps: PoissonStructure,
    samples: int = 50,
    seed: int = DEFAULT_SEED,
    progress: bool = False,
    budget: Optional[Budget] = None,
) -> AxiomReport:
    """Check the five vertex Poisson axioms on randomized operands.

    Both sides are computed in the arc ring and compared modulo the jet
    relations. The first samples of every axiom use pairs of base variables,
    so a broken bracket matrix is caught deterministically.

    Args:
        jr: Jet ring supplying the level and the sampled jet variables
        ps: Poisson structure to test (need not be valid)
        samples: Samples per axiom
        seed: Seed for the operand generator
        progress: Show a progress bar on stderr
        budget: Limits for the membership tests

    Returns:
        AxiomReport with counterexamples for every failing sample
    """
    sampler = _AxiomSampler(jr, ps, seed)
    checks: List[Tuple[str, Callable[[int], Sample]]] = [
        ("PVA-1", sampler.translation),
        ("PVA-2", sampler.skew_symmetry),
        ("PVA-3", sampler.commutator),
        ("PVA-4", sampler.left_leibniz),
        ("PVA-5", sampler.right_leibniz),
    ]
    results = []
    with tqdm(
        total=samples * len(checks), desc="Axiom samples", unit="sample", disable=not progress
    ) as pbar:
        for axiom, draw in checks:
            result = AxiomResult(axiom, samples)
            for index in range(samples):
                lhs, rhs, a, b, c = draw(index)
                if not _holds(jr, lhs - rhs, budget):
                    result.failures.append(
                        AxiomFailure(
                            a=str(a),
                            b=str(b),
                            c=str(c) if c is not None else "",
                            lhs=str(lhs),
                            rhs=str(rhs),
                        )
                    )
                pbar.update(1)
            if result.failures:
                logger.warning(f"{axiom} failed on {len(result.failures)} of {samples} samples")
            results.append(result)
    report = AxiomReport(level=jr.level, seed=seed, results=results)
    logger.info(f"Axiom check at level {jr.level}: {'pass' if report.all_passed else 'FAIL'}")
    return report
