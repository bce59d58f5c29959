"""Vertex Poisson structure on jet rings.

The operators a_(k) are computed in the full arc ring and only then checked
against the jet level, so truncation never corrupts an intermediate value.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from ..exceptions import HeadroomExceededError, InputError, NotConvergedError
from ..models.ideal import Ideal
from ..models.order import DEGREVLEX
from ..models.polynomial import Monomial, Polynomial, VarId, degrevlex_key
from ..models.reports import ChiralCheck
from ..models.ring import ChiralOperator, JetPoint, JetRing, PoissonStructure, RingPresentation
from ..utils.budget import Budget
from ..utils.linalg import EchelonBasis, kernel
from .groebner import basis, member, normal_form
from .jet import maximal_ideal, translate, translate_power

logger = logging.getLogger(__name__)

DEFAULT_MAX_ITER = 50
MEMO_LIMIT = 200_000


class _ModeEngine:
    """Memoized a_(k) on jet variables for one Poisson structure.

    Every source monomial acts as a derivation, so all work reduces to
    values on single jet variables, which are cached. Each table is emptied
    once it holds ``memo_limit`` entries.
    """

    def __init__(self, ps: PoissonStructure, memo_limit: int = MEMO_LIMIT) -> None:
        self.ps = ps
        self.memo_limit = memo_limit
        self._base: Dict[Tuple[Monomial, int, VarId], Polynomial] = {}
        self._mono: Dict[Tuple[Monomial, int, VarId], Polynomial] = {}

    @property
    def memo_size(self) -> int:
        return len(self._base) + len(self._mono)

    def _remember(self, table: dict, key: tuple, value: Polynomial) -> None:
        if len(table) >= self.memo_limit:
            logger.debug(f"Mode memo reached {len(table)} entries; clearing")
            table.clear()
        table[key] = value

    def base_on_var(self, a: Monomial, k: int, y: VarId) -> Polynomial:
        """a_(k) y_(-l-1) for a base monomial a.

        Recursion on l from a_(k) T = T a_(k) + k a_(k-1), starting at
        a_(0) y = {a, y} and a_(k) y = 0 for k > 0.
        """
        if k < 0:
            return Polynomial.zero()
        key = (a, k, y)
        cached = self._base.get(key)
        if cached is not None:
            return cached
        level = y.jet_level
        if level == 0:
            if k == 0:
                value = self.ps.bracket(Polynomial.monomial(a), Polynomial.variable(y))
            else:
                value = Polynomial.zero()
        elif k > level:
            value = Polynomial.zero()
        else:
            lower = y.at_level(level - 1)
            value = translate(self.base_on_var(a, k, lower))
            if k:
                value = value + self.base_on_var(a, k - 1, lower).scale(k)
            value = value.scale(Fraction(1, level))
        self._remember(self._base, key, value)
        return value

    def monomial_on_var(self, a: Monomial, k: int, y: VarId) -> Polynomial:
        """a_(k) y for any jet monomial a."""
        if a.is_one:
            return Polynomial.zero()
        if a.jet_depth == 0:
            return self.base_on_var(a, k, y)
        key = (a, k, y)
        cached = self._mono.get(key)
        if cached is not None:
            return cached
        if a.degree == 1:
            v = a.variables()[0]
            j = v.jet_level
            if k < j:
                value = Polynomial.zero()
            else:
                # (T^j x / j!)_(k) = (-1)^j C(k, j) x_(k-j)
                inner = self.base_on_var(Monomial.of(v.base), k - j, y)
                value = inner.scale((-1) ** j * comb(k, j))
        else:
            value = self._right_leibniz(a, k, y)
        self._remember(self._mono, key, value)
        return value

    def _right_leibniz(self, a: Monomial, k: int, y: VarId) -> Polynomial:
        # (v rest)_(k) y = sum_i rest_(-i-1) v_(k+i) y + v_(-i-1) rest_(k+i) y
        v = a.variables()[0]
        head = Monomial.of(v)
        rest = a / head
        head_poly = Polynomial.monomial(head)
        rest_poly = Polynomial.monomial(rest)
        bound = a.jet_depth + y.jet_level - k
        total = Polynomial.zero()
        for i in range(bound + 1):
            scale = Fraction(1, factorial(i))
            first = self.monomial_on_var(head, k + i, y)
            if first:
                total = total + translate_power(rest_poly, i).scale(scale) * first
            second = self.monomial_on_var(rest, k + i, y)
            if second:
                total = total + translate_power(head_poly, i).scale(scale) * second
        return total

    def apply(self, a: Polynomial, k: int, b: Polynomial) -> Polynomial:
        """a_(k) b in the arc ring, by the derivation rule in b."""
        if a.is_zero or b.is_zero:
            return Polynomial.zero()
        cache: Dict[Tuple[Monomial, VarId], Polynomial] = {}
        result: Dict[Monomial, Fraction] = {}
        for mb, cb in b.items():
            for y, e in mb.powers:
                partial = Polynomial.monomial(mb / Monomial.of(y), cb * e)
                for ma, ca in a.items():
                    slot = (ma, y)
                    if slot not in cache:
                        cache[slot] = self.monomial_on_var(ma, k, y)
                    value = cache[slot]
                    if value.is_zero:
                        continue
                    for m, c in (partial * value).items():
                        s = result.get(m, 0) + c * ca
                        if s:
                            result[m] = s
                        else:
                            result.pop(m, None)
        return Polynomial(result)


@lru_cache(maxsize=32)
def _engine(ps: PoissonStructure) -> _ModeEngine:
    return _ModeEngine(ps)


def mode_product(ps: PoissonStructure, a: Polynomial, k: int, b: Polynomial) -> Polynomial:
    """a_(k) b in the arc ring, for k >= 0; no level check."""
    if k < 0:
        raise InputError("mode", f"non-negative mode expected, got {k}")
    return _engine(ps).apply(a, k, b)


def jacobi_check(
    ps: PoissonStructure, R: RingPresentation, budget: Optional[Budget] = None
) -> bool:
    """Jacobi identity and Poisson-ness of the relations, modulo the relations."""
    relations = R.relation_ideal()
    variables = [Polynomial.variable(v) for v in ps.variables]
    for x, y, z in combinations(variables, 3):
        jacobiator = (
            ps.bracket(x, ps.bracket(y, z))
            + ps.bracket(y, ps.bracket(z, x))
            + ps.bracket(z, ps.bracket(x, y))
        )
        if not member(jacobiator, relations, budget):
            logger.info(f"Jacobi identity fails on ({x}, {y}, {z})")
            return False
    for x in variables:
        for f in R.relations:
            if not member(ps.bracket(x, f), relations, budget):
                logger.info(f"Relations are not a Poisson ideal: {{{x}, {f}}}")
                return False
    return True


def bracket_on_jet_vars(
    ps: PoissonStructure, jr: JetRing, i: int, k: int, j: int, q: int
) -> Polynomial:
    """x^i_(k)(T^q x^j) = q!/(q-k)! T^(q-k){x^i, x^j}, or 0 if q < k."""
    if not (0 <= k <= jr.level and 0 <= q <= jr.level):
        raise InputError("mode", f"mode {k} and T-power {q} must lie in 0..{jr.level}")
    if q < k:
        return Polynomial.zero()
    entry = ps.bracket_matrix[i][j]
    return translate_power(entry, q - k, jr.level).scale(
        Fraction(factorial(q), factorial(q - k))
    )


def apply_mode(op: ChiralOperator, b: Polynomial) -> Polynomial:
    """a_(k)(b) in J_n R.

    Raises:
        HeadroomExceededError: If an operand or the result does not fit in the
            jet ring's level
    """
    level = op.level
    required = max(op.source.jet_depth, b.jet_depth)
    if required > level:
        raise HeadroomExceededError(level, required)
    result = mode_product(op.ring.poisson, op.source, op.mode, b)
    if result.jet_depth > level:
        raise HeadroomExceededError(level, result.jet_depth)
    return result


def _base_sources(jr: JetRing) -> List[Tuple[VarId, Polynomial]]:
    return [(x, Polynomial.variable(x)) for x in jr.base.vars]


def is_chiral_ideal(
    jr: JetRing, ps: PoissonStructure, I: Ideal, budget: Optional[Budget] = None
) -> ChiralCheck:
    """Check x^i_(k) g in I + jet relations for base x^i, k <= n, generators g.

    Returns:
        ChiralCheck, carrying the first offending (x, k, g) on failure
    """
    target = Ideal(I.generators + jr.jet_relations.generators, DEGREVLEX)
    for x, xp in _base_sources(jr):
        for k in range(jr.level + 1):
            for g in I.generators:
                value = mode_product(ps, xp, k, g)
                if value.jet_depth > jr.level:
                    raise HeadroomExceededError(jr.level, value.jet_depth)
                if not member(value, target, budget):
                    logger.debug(f"{x.base_name}_({k}) {g} is not in the ideal")
                    return ChiralCheck(False, (x, k, g))
    return ChiralCheck(True)


def _monomials_upto(variables: Sequence[VarId], d: int) -> List[Monomial]:
    out: List[Monomial] = [Monomial()]
    frontier = [Monomial()]
    for _ in range(d):
        grown = set()
        for m in frontier:
            last = m.variables()[-1] if m.powers else None
            for v in variables:
                if last is None or v >= last:
                    grown.add(m * Monomial.of(v))
        frontier = sorted(grown, key=lambda m: m.powers)
        out.extend(frontier)
    return out


def jet_order_key(jr: JetRing):
    """Degrevlex sort key on monomials in the jet variables of ``jr``."""
    ranking = sorted(jr.jet_vars)
    return lambda m: degrevlex_key(m, ranking)


def _as_vector(p: Polynomial) -> Dict[Monomial, Fraction]:
    return dict(p.items())


def _span_basis(vectors, key) -> EchelonBasis:
    echelon: EchelonBasis = EchelonBasis(key)
    for v in vectors:
        echelon.add(v)
    return echelon


def _to_polys(echelon: EchelonBasis) -> Tuple[Polynomial, ...]:
    return tuple(Polynomial(v) for v in echelon.vectors())


def chiral_core_upto(
    jr: JetRing,
    ps: PoissonStructure,
    I: Ideal,
    d: int,
    max_iter: int = DEFAULT_MAX_ITER,
    budget: Optional[Budget] = None,
) -> Tuple[Polynomial, ...]:
    """Degree <= d part of the biggest chiral Poisson ideal inside I.

    Starts from (I + jet relations) in degree <= d, in normal-form
    coordinates modulo the jet relations, and repeatedly keeps the elements
    whose images under every x^i_(k) stay in the current space.

    Returns:
        Reduced echelon basis of the stable subspace, leading monomial first

    Raises:
        NotConvergedError: If the space still shrinks after ``max_iter`` steps
    """
    if d < 0:
        raise InputError("degree_bound", f"degree bound must be >= 0, got {d}")
    relations = jr.jet_relations
    key = jet_order_key(jr)
    full = Ideal(I.generators + relations.generators, DEGREVLEX)
    start = []
    for g in basis(full, budget):
        if g.degree > d:
            continue
        for m in _monomials_upto(jr.jet_vars, d - int(g.degree)):
            start.append(_as_vector(normal_form(Polynomial.monomial(m) * g, relations, budget)))
    current = _span_basis(start, key)
    sources = _base_sources(jr)
    for iteration in range(1, max_iter + 1):
        elements = _to_polys(current)
        residuals = []
        for b in elements:
            column: Dict[tuple, Fraction] = {}
            for x, xp in sources:
                for k in range(jr.level + 1):
                    image = normal_form(mode_product(ps, xp, k, b), relations, budget)
                    for m, c in current.reduce(_as_vector(image)).items():
                        column[(x, k, m)] = c
            residuals.append(column)
        null = kernel(residuals, key=lambda col: (col[0], col[1], key(col[2])))
        if len(null) == len(elements):
            logger.debug(f"Core stabilized at dimension {len(elements)} after {iteration} steps")
            return elements
        shrunk = []
        for combo in null:
            total = Polynomial.zero()
            for s, c in combo.items():
                total = total + elements[s].scale(c)
            shrunk.append(_as_vector(total))
        current = _span_basis(shrunk, key)
        logger.debug(f"Core iteration {iteration}: dimension {len(current)}")
    last = _to_polys(current)
    logger.warning(f"Core did not stabilize after {max_iter} iterations")
    raise NotConvergedError(max_iter, last)


def _standard_monomials(jr: JetRing, Q: Ideal, d: int, budget: Optional[Budget]) -> List[Monomial]:
    leading = [DEGREVLEX.leading_term(g)[0] for g in basis(Q, budget)]
    return [
        m
        for m in _monomials_upto(jr.jet_vars, d)
        if not any(lm.divides(m) for lm in leading)
    ]


def vp_center_upto(
    jr: JetRing,
    ps: PoissonStructure,
    quotient_ideal: Ideal,
    d: int,
    budget: Optional[Budget] = None,
) -> Tuple[Polynomial, ...]:
    """Central elements of degree <= d in J_n R / quotient_ideal.

    Solves x^i_(k) z = 0 modulo the quotient for all base x^i and k <= n,
    over the standard monomials of degree <= d.

    Returns:
        Reduced echelon basis of the center truncation, leading monomial first
    """
    if d < 0:
        raise InputError("degree_bound", f"degree bound must be >= 0, got {d}")
    Q = Ideal(quotient_ideal.generators + jr.jet_relations.generators, DEGREVLEX)
    key = jet_order_key(jr)
    standard = _standard_monomials(jr, Q, d, budget)
    sources = _base_sources(jr)
    images = []
    for m in standard:
        mp = Polynomial.monomial(m)
        column: Dict[tuple, Fraction] = {}
        for x, xp in sources:
            for k in range(jr.level + 1):
                image = normal_form(mode_product(ps, xp, k, mp), Q, budget)
                for mono, c in image.items():
                    column[(x, k, mono)] = c
        images.append(column)
    null = kernel(images, key=lambda col: (col[0], col[1], key(col[2])))
    central = []
    for combo in null:
        central.append({standard[s]: c for s, c in combo.items()})
    result = _to_polys(_span_basis(central, key))
    logger.debug(
        f"Center up to degree {d}: {len(result)} of {len(standard)} standard monomials"
    )
    return result


def graded_dimensions(elements: Sequence[Polynomial], weights=None) -> Dict[int, int]:
    """Count a reduced echelon basis by the degree of its leading monomials.

    ``weights`` switches from total degree to weighted degree.
    """
    counts: Dict[int, int] = {}
    for p in elements:
        lead = DEGREVLEX.leading_term(p)[0]
        degree = lead.weighted_degree(weights) if weights is not None else lead.degree
        counts[degree] = counts.get(degree, 0) + 1
    return dict(sorted(counts.items()))


def point_core_upto(
    jr: JetRing,
    ps: PoissonStructure,
    point: JetPoint,
    d: int,
    max_iter: int = DEFAULT_MAX_ITER,
    budget: Optional[Budget] = None,
) -> Tuple[Polynomial, ...]:
    """Truncated chiral Poisson core of the maximal ideal of a point."""
    return chiral_core_upto(jr, ps, maximal_ideal(jr, point), d, max_iter, budget)


def same_chiral_core(
    jr: JetRing,
    ps: PoissonStructure,
    x: JetPoint,
    y: JetPoint,
    d: int,
    budget: Optional[Budget] = None,
) -> bool:
    """True iff both points have the same truncated chiral Poisson core."""
    return point_core_upto(jr, ps, x, d, budget=budget) == point_core_upto(
        jr, ps, y, d, budget=budget
    )


def center_constant_on_core(z: Polynomial, x: JetPoint, y: JetPoint) -> bool:
    """A central element takes the same value at both points."""
    return z.evaluate(x.as_dict()) == z.evaluate(y.as_dict())
