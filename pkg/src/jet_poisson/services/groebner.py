"""Gröbner-basis engine: Buchberger with Gebauer-Möller criteria and sugar.

All computations run on dense exponent tuples laid out by the ideal's monomial
order; results come back as reduced, monic Polynomials sorted by leading
monomial (largest first).
"""

import logging
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from ..exceptions import InputError
from ..models.ideal import Ideal
from ..models.order import MonomialOrder
from ..models.polynomial import Monomial, Polynomial, VarId
from ..models.ring import PoissonStructure
from ..utils.budget import Budget, BudgetMeter

logger = logging.getLogger(__name__)

Exps = Tuple[int, ...]
Dense = Dict[Exps, Fraction]

RABINOWITSCH_VAR = VarId("__rabinowitsch_t", 0)


def _divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exps, b: Exps) -> Exps:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Exps, b: Exps) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


class _DenseRing:
    """Conversion and reduction helpers for one variable layout."""

    def __init__(self, variables: Sequence[VarId], order: MonomialOrder) -> None:
        self.variables = list(variables)
        self.key = order.exponent_key(self.variables)

    def to_dense(self, p: Polynomial) -> Dense:
        return {m.dense(self.variables): c for m, c in p.items()}

    def to_poly(self, f: Dense) -> Polynomial:
        terms = {}
        for exps, c in f.items():
            terms[Monomial(tuple((v, e) for v, e in zip(self.variables, exps) if e))] = c
        return Polynomial(terms)

    def lm(self, f: Dense) -> Exps:
        return max(f, key=self.key)

    def monic(self, f: Dense) -> Dense:
        lc = f[self.lm(f)]
        if lc == 1:
            return f
        return {m: c / lc for m, c in f.items()}

    def reduce(self, f: Dense, basis: Sequence[Tuple[Exps, Dense]]) -> Dense:
        """Full reduction of ``f`` by monic ``basis`` entries (lm, poly)."""
        p = dict(f)
        remainder: Dense = {}
        key = self.key
        while p:
            m = max(p, key=key)
            c = p[m]
            for lm_g, g in basis:
                if _divides(lm_g, m):
                    shift = tuple(a - b for a, b in zip(m, lm_g))
                    for gm, gc in g.items():
                        t = tuple(a + b for a, b in zip(gm, shift))
                        v = p.get(t, 0) - c * gc
                        if v:
                            p[t] = v
                        else:
                            p.pop(t, None)
                    break
            else:
                remainder[m] = c
                del p[m]
        return remainder

    def spoly(self, f: Dense, lm_f: Exps, g: Dense, lm_g: Exps) -> Dense:
        lcm = _lcm(lm_f, lm_g)
        uf = tuple(a - b for a, b in zip(lcm, lm_f))
        ug = tuple(a - b for a, b in zip(lcm, lm_g))
        result: Dense = {}
        for m, c in f.items():
            t = tuple(a + b for a, b in zip(m, uf))
            result[t] = result.get(t, 0) + c
        for m, c in g.items():
            t = tuple(a + b for a, b in zip(m, ug))
            v = result.get(t, 0) - c
            if v:
                result[t] = v
            else:
                result.pop(t, None)
        return {m: c for m, c in result.items() if c}


def _buchberger(ring: _DenseRing, inputs: List[Dense], meter: BudgetMeter) -> List[Dense]:
    polys: List[Dense] = []
    lms: List[Exps] = []
    sugar: List[int] = []
    G: Set[int] = set()
    B: Set[Tuple[int, int]] = set()

    def add(h: Dense, s: int) -> bool:
        nonlocal G, B
        h = ring.monic(h)
        lm_h = ring.lm(h)
        meter.check_degree(max(sum(m) for m in h))
        polys.append(h)
        lms.append(lm_h)
        sugar.append(s)
        G, B = _update(G, B, len(polys) - 1)
        return sum(lm_h) == 0

    def _update(G: Set[int], B: Set[Tuple[int, int]], ih: int):
        mh = lms[ih]
        C = set(G)
        D: Set[Tuple[int, int]] = set()
        while C:
            ig = C.pop()
            mg = lms[ig]
            lcm_hg = _lcm(mh, mg)

            def lcm_divides(ip: int) -> bool:
                return _divides(_lcm(mh, lms[ip]), lcm_hg)

            if _coprime(mh, mg) or (
                not any(lcm_divides(ipx) for ipx in C)
                and not any(lcm_divides(pr[1]) for pr in D)
            ):
                D.add((ih, ig))

        E = {(a, b) for a, b in D if not _coprime(mh, lms[b])}

        B_new = set()
        for a, b in B:
            lcm_ab = _lcm(lms[a], lms[b])
            if (
                not _divides(mh, lcm_ab)
                or _lcm(lms[a], mh) == lcm_ab
                or _lcm(lms[b], mh) == lcm_ab
            ):
                B_new.add((a, b))
        B_new |= E

        G_new = {ig for ig in G if not _divides(mh, lms[ig])}
        G_new.add(ih)
        return G_new, B_new

    def pair_sugar(pair: Tuple[int, int]) -> int:
        a, b = pair
        lcm = sum(_lcm(lms[a], lms[b]))
        return max(sugar[a] + lcm - sum(lms[a]), sugar[b] + lcm - sum(lms[b]))

    def current_basis() -> List[Tuple[Exps, Dense]]:
        return [(lms[i], polys[i]) for i in sorted(G)]

    for f in sorted(inputs, key=lambda f: ring.key(ring.lm(f))):
        h = ring.reduce(f, current_basis())
        if h and add(h, max(sum(m) for m in f)):
            return [{tuple(0 for _ in ring.variables): Fraction(1)}]

    while B:
        pair = min(
            B,
            key=lambda pr: (pair_sugar(pr), ring.key(_lcm(lms[pr[0]], lms[pr[1]])), pr),
        )
        B.discard(pair)
        meter.charge_spair()
        a, b = pair
        s = ring.spoly(polys[a], lms[a], polys[b], lms[b])
        h = ring.reduce(s, current_basis())
        if h and add(h, pair_sugar(pair)):
            return [{tuple(0 for _ in ring.variables): Fraction(1)}]

    logger.debug(f"Buchberger finished after {meter.spairs} S-pair reductions")

    # minimize, then interreduce
    minimal = [
        i
        for i in sorted(G)
        if not any(j != i and _divides(lms[j], lms[i]) for j in G)
    ]
    reduced: List[Dense] = []
    for i in minimal:
        others = [(lms[j], polys[j]) for j in minimal if j != i]
        tail = {m: c for m, c in polys[i].items() if m != lms[i]}
        reduced.append({lms[i]: Fraction(1), **ring.reduce(tail, others)})
    reduced.sort(key=lambda f: ring.key(ring.lm(f)), reverse=True)
    return reduced


def _layout(ideal: Ideal, extra: Iterable[VarId] = ()) -> _DenseRing:
    variables = ideal.order.variable_order(set(ideal.variables()) | set(extra))
    return _DenseRing(variables, ideal.order)


def groebner_basis(ideal: Ideal, budget: Optional[Budget] = None) -> Ideal:
    """Fill ``ideal.gb_cache`` with the reduced Gröbner basis.

    Args:
        ideal: Ideal to process; the basis is computed at most once
        budget: Limits on S-pair reductions and basis degree

    Returns:
        The same ideal, with its cache populated

    Raises:
        ResourceLimitError: If the budget is exhausted
    """
    if ideal.gb_cache is not None:
        return ideal
    with ideal._lock:
        if ideal.gb_cache is not None:
            return ideal
        ring = _layout(ideal)
        inputs = [ring.to_dense(g) for g in ideal.generators]
        meter = BudgetMeter(budget)
        dense_basis = _buchberger(ring, inputs, meter) if inputs else []
        ideal._store_basis(tuple(ring.to_poly(f) for f in dense_basis))
        logger.debug(
            f"Reduced basis with {len(dense_basis)} elements "
            f"from {len(inputs)} generators ({meter.spairs} S-pairs)"
        )
    return ideal


def basis(ideal: Ideal, budget: Optional[Budget] = None) -> Tuple[Polynomial, ...]:
    return groebner_basis(ideal, budget).gb_cache


def normal_form(p: Polynomial, ideal: Ideal, budget: Optional[Budget] = None) -> Polynomial:
    """Remainder of ``p`` modulo the reduced basis: a unique representative mod I."""
    gb = basis(ideal, budget)
    if p.is_zero or not gb:
        return p
    ring = _layout(ideal, p.variables())
    dense_basis = [(ring.lm(f), f) for f in (ring.to_dense(g) for g in gb)]
    return ring.to_poly(ring.reduce(ring.to_dense(p), dense_basis))


def is_unit(ideal: Ideal, budget: Optional[Budget] = None) -> bool:
    gb = basis(ideal, budget)
    return len(gb) == 1 and gb[0].is_constant


def member(p: Polynomial, ideal: Ideal, budget: Optional[Budget] = None) -> bool:
    """True iff p lies in the ideal."""
    return normal_form(p, ideal, budget).is_zero


def radical_member(p: Polynomial, ideal: Ideal, budget: Optional[Budget] = None) -> bool:
    """True iff some power of p lies in the ideal (Rabinowitsch trick)."""
    if p.is_zero:
        return True
    t = Polynomial.variable(RABINOWITSCH_VAR)
    augmented = ideal.extend([Polynomial.constant(1) - t * p])
    return is_unit(augmented, budget)


def ideal_equal(first: Ideal, second: Ideal, budget: Optional[Budget] = None) -> bool:
    """True iff both ideals have the same reduced basis under the first's order."""
    if second.order != first.order:
        second = second.with_order(first.order)
    return set(basis(first, budget)) == set(basis(second, budget))


def contains(big: Ideal, small: Ideal, budget: Optional[Budget] = None) -> bool:
    return all(member(g, big, budget) for g in small.generators)


def eliminate(
    ideal: Ideal, keep: Iterable[VarId], budget: Optional[Budget] = None
) -> Ideal:
    """Generators of I ∩ Q[keep], via a block elimination order."""
    keep = set(keep)
    drop = ideal.variables() - keep
    if not drop:
        return ideal
    elim = ideal.with_order(MonomialOrder.block(drop))
    survivors = [g for g in basis(elim, budget) if not (g.variables() & drop)]
    return Ideal(tuple(survivors), ideal.order)


def initial_ideal(
    ideal: Ideal, weights: Mapping[VarId, int], budget: Optional[Budget] = None
) -> Ideal:
    """Ideal of top-weight forms of all elements of I.

    Uses a basis under the weight order refined by degrevlex; the initial
    forms of that basis generate the initial ideal.
    """
    missing = ideal.variables() - set(weights)
    if missing:
        raise InputError(
            "weights", f"no weight for {', '.join(sorted(map(str, missing)))}"
        )
    weighted = ideal.with_order(MonomialOrder.weighted(weights))
    forms = [g.weighted_top_form(weights) for g in basis(weighted, budget)]
    return Ideal(tuple(forms), MonomialOrder.degrevlex(ideal.order.ranking))


def determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant by cofactor expansion with memoized column subsets."""
    size = len(matrix)
    memo: Dict[Tuple[int, Tuple[int, ...]], Polynomial] = {}

    def minor(row: int, cols: Tuple[int, ...]) -> Polynomial:
        if row == size:
            return Polynomial.constant(1)
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = Polynomial.zero()
        for pos, col in enumerate(cols):
            entry = matrix[row][col]
            if entry.is_zero:
                continue
            rest = minor(row + 1, cols[:pos] + cols[pos + 1 :])
            term = entry * rest
            total = total - term if pos % 2 else total + term
        memo[key] = total
        return total

    return minor(0, tuple(range(size)))


def minors_ideal(matrix: Sequence[Sequence[Polynomial]], k: int) -> Ideal:
    """Ideal generated by all k x k minors of ``matrix``."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if not 1 <= k <= min(rows, cols):
        raise InputError("k", f"minor size {k} outside 1..{min(rows, cols)}")
    minors = []
    for r in combinations(range(rows), k):
        for c in combinations(range(cols), k):
            minors.append(determinant([[matrix[i][j] for j in c] for i in r]))
    return Ideal(tuple(minors))


def is_poisson_ideal(
    ps: PoissonStructure, ideal: Ideal, budget: Optional[Budget] = None
) -> Tuple[bool, Optional[Tuple[VarId, Polynomial]]]:
    """Check {x^i, g} in I for every base variable and generator.

    Returns:
        (True, None) or (False, (variable, generator)) for the first failure
    """
    for x in ps.variables:
        xp = Polynomial.variable(x)
        for g in ideal.generators:
            if not member(ps.bracket(xp, g), ideal, budget):
                return False, (x, g)
    return True, None


def basis_text(ideal: Ideal, budget: Optional[Budget] = None) -> str:
    """Reduced basis in canonical text, one generator per line."""
    return "\n".join(ideal.order.format(g) for g in basis(ideal, budget))
