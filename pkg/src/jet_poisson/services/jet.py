"""Jet rings J_n R, the derivation T, jet ideals and jet points."""

import logging
from fractions import Fraction
from math import factorial
from typing import Dict, List, Mapping, Optional

from ..exceptions import (
    HeadroomExceededError,
    InputError,
    MissingAssignmentError,
    PointNotOnVarietyError,
)
from ..models.ideal import Ideal
from ..models.order import DEGREVLEX
from ..models.polynomial import Monomial, Polynomial, Scalar, VarId
from ..models.ring import JetPoint, JetRing, RingPresentation
from .groebner import eliminate

logger = logging.getLogger(__name__)


def translate(p: Polynomial, level: Optional[int] = None) -> Polynomial:
    """Apply T once: T x_(-j) = j x_(-j-1), extended as a derivation.

    With ``level`` set, T of a level-``level`` variable is 0 (truncated
    derivation of J_level R); without it T acts on the full arc ring.
    """
    result: Dict[Monomial, Fraction] = {}
    for m, c in p.items():
        for v, e in m.powers:
            if level is not None and v.jet_level >= level:
                continue
            lowered = m / Monomial.of(v)
            raised = lowered * Monomial.of(v.at_level(v.jet_level + 1))
            result[raised] = result.get(raised, 0) + c * e * (v.jet_level + 1)
    return Polynomial(result)


def translate_power(p: Polynomial, times: int, level: Optional[int] = None) -> Polynomial:
    for _ in range(times):
        if p.is_zero:
            break
        p = translate(p, level)
    return p


def derivation_T(jr: JetRing, p: Polynomial) -> Polynomial:
    """The truncated derivation T of J_n R."""
    if p.jet_depth > jr.level:
        raise HeadroomExceededError(jr.level, p.jet_depth)
    return translate(p, jr.level)


def jet_generators(f: Polynomial, level: int) -> List[Polynomial]:
    """T^j f for 0 <= j <= level, computed in the arc ring."""
    out = [f]
    for _ in range(level):
        out.append(translate(out[-1]))
    return out


def build_jet_ring(R: RingPresentation, n: int) -> JetRing:
    """J_n R = Q[x^i_(-j-1), j <= n] / (T^j f_i, j <= n).

    Args:
        R: Base presentation
        n: Jet level

    Returns:
        The jet ring, with jet weights deg x_(-j-1) = deg x + j when R is graded
    """
    if n < 0:
        raise InputError("level", f"jet level must be >= 0, got {n}")
    jet_vars = tuple(v.at_level(j) for j in range(n + 1) for v in R.vars)
    relations = [g for f in R.relations for g in jet_generators(f, n)]
    weights = None
    if R.weights is not None:
        weights = tuple(
            (v.at_level(j), w + j) for j in range(n + 1) for v, w in R.weights
        )
    logger.debug(
        f"Built J_{n} of {R.name or 'ring'}: {len(jet_vars)} variables, "
        f"{len(relations)} relations"
    )
    return JetRing(
        base=R,
        level=n,
        jet_vars=jet_vars,
        jet_relations=Ideal(tuple(relations), DEGREVLEX),
        jet_weights=weights,
    )


def with_level(jr: JetRing, n: int) -> JetRing:
    """The jet ring of the same base at another level."""
    return jr if n == jr.level else build_jet_ring(jr.base, n)


def jet_ideal(jr: JetRing, ideal: Ideal) -> Ideal:
    """J_n I: generated by T^j g for every generator g of I, j <= n."""
    for g in ideal.generators:
        if g.jet_depth > 0:
            raise InputError(
                "ideal", "jet ideals need generators in base variables", str(g)
            )
    return Ideal(
        tuple(h for g in ideal.generators for h in jet_generators(g, jr.level)),
        ideal.order,
    )


def extension_ideal(jr: JetRing, ideal: Ideal) -> Ideal:
    """I ⊗_R J_n R: the base generators plus the jet relations, no T-closure."""
    return Ideal(ideal.generators + jr.jet_relations.generators, ideal.order)


def pullback_ideal(ideal: Ideal, jr: JetRing) -> Ideal:
    """Comorphism of the truncation J_m X -> J_n X on ideals (m = jr.level)."""
    if ideal.variables() and max(v.jet_level for v in ideal.variables()) > jr.level:
        raise HeadroomExceededError(
            jr.level, max(v.jet_level for v in ideal.variables())
        )
    return extension_ideal(jr, ideal)


def restrict_to_base(ideal: Ideal, jr: JetRing) -> Ideal:
    """I ∩ R, eliminating every jet variable of level >= 1."""
    return eliminate(ideal, jr.variables_at(0))


def maximal_ideal(jr: JetRing, point: JetPoint) -> Ideal:
    coords = point.as_dict()
    return Ideal(
        tuple(Polynomial.variable(v) - coords[v] for v in jr.jet_vars if v in coords)
    )


def _check_on_variety(relations, coords: Mapping[VarId, Fraction]) -> None:
    for rel in relations:
        value = rel.evaluate(coords)
        if value != 0:
            raise PointNotOnVarietyError(str(rel), value)


def make_jet_point(jr: JetRing, coords: Mapping[VarId, Scalar]) -> JetPoint:
    """Validate coordinates on every jet variable and the jet relations."""
    point = JetPoint.from_mapping(coords)
    values = point.as_dict()
    missing = set(jr.jet_vars) - set(values)
    if missing:
        raise MissingAssignmentError(missing)
    _check_on_variety(jr.jet_relations.generators, values)
    return point


def iota_point(jr: JetRing, base_point: Mapping[VarId, Scalar]) -> JetPoint:
    """The constant arc through a base point: zero above jet level 0."""
    values = {v: base_point[v] for v in jr.base.vars if v in base_point}
    missing = set(jr.base.vars) - set(values)
    if missing:
        raise MissingAssignmentError(missing)
    _check_on_variety(jr.base.relations, JetPoint.from_mapping(values).as_dict())
    coords: Dict[VarId, Scalar] = {}
    for v in jr.jet_vars:
        coords[v] = values[v.base] if v.jet_level == 0 else 0
    return JetPoint.from_mapping(coords)


def truncate_point(point: JetPoint, n: int) -> JetPoint:
    """pi_{m,n}: keep coordinates of jet level <= n."""
    if n < 0 or n > point.level:
        raise InputError("level", f"cannot truncate a level-{point.level} point to {n}")
    return JetPoint(tuple((v, c) for v, c in point.coords if v.jet_level <= n))


def negative_mode(jr: JetRing, a: Polynomial, m: int, b: Polynomial) -> Polynomial:
    """a_(-m-1) b = (T^m a / m!) b in the commutative vertex algebra."""
    required = max(a.jet_depth + m, b.jet_depth)
    if required > jr.level:
        raise HeadroomExceededError(jr.level, required)
    return translate_power(a, m).scale(Fraction(1, factorial(m))) * b
