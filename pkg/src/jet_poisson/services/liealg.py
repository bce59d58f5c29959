"""Lie-Poisson examples: sl2, nilpotent cones, fiber ideals and the regular slice."""

import logging
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Sequence, Union

from ..exceptions import InputError
from ..models.ideal import Ideal
from ..models.lie import FiberSpec, LieAlgebraData, SlodowySlice
from ..models.polynomial import Polynomial, VarId
from ..models.reports import CenterIsoReport
from ..models.ring import JetRing, PoissonStructure, RingPresentation
from ..utils.budget import Budget
from ..utils.linalg import EchelonBasis
from ..utils.parsing import load_ring, parse_polynomial, read_document
from .jet import build_jet_ring, translate_power
from .vpa import graded_dimensions, jacobi_check, jet_order_key, vp_center_upto

logger = logging.getLogger(__name__)

E, H, F = VarId("e"), VarId("h"), VarId("f")


def make_sl2() -> LieAlgebraData:
    """sl2 with {h,e} = 2e, {h,f} = -2f, {e,f} = h and Casimir ef + h^2/4."""
    e, h, f = (Polynomial.variable(v) for v in (E, H, F))
    poisson = PoissonStructure.from_brackets(
        (E, H, F),
        {(E, H): e.scale(-2), (E, F): h, (H, F): f.scale(-2)},
    )
    omega = e * f + (h * h).scale(Fraction(1, 4))
    return LieAlgebraData(
        name="sl2",
        basis=(E, H, F),
        poisson=poisson,
        invariants_p=(omega,),
        sl2_triple=(e, h, f),
        slodowy_weights=((E, 4), (F, 0), (H, 2)),
    )


def casimir_check(L: LieAlgebraData) -> bool:
    """Every invariant Poisson-commutes with every basis element."""
    for p in L.invariants_p:
        for x in L.basis:
            if not L.poisson.bracket(Polynomial.variable(x), p).is_zero:
                logger.info(f"{p} does not commute with {x}")
                return False
    return True


def lie_algebra_from_json(source: Union[str, Path, Mapping[str, Any]]) -> LieAlgebraData:
    """LieAlgebraData from a ring document with ``invariants`` and ``sl2_triple``.

    Raises:
        InputError: If the document has no bracket or a malformed triple
    """
    data = read_document(source)
    ring = load_ring(data)
    if ring.relations:
        logger.debug(f"Ignoring {len(ring.relations)} relations: the Lie algebra is the free ring")
    if ring.poisson is None:
        raise InputError("poisson", "a Lie algebra needs its bracket matrix")
    invariants = tuple(parse_polynomial(s, "invariants") for s in data.get("invariants", []))
    triple = None
    if data.get("sl2_triple") is not None:
        raw = data["sl2_triple"]
        if not isinstance(raw, list) or len(raw) != 3:
            raise InputError("sl2_triple", "expected three polynomials (e, h, f)")
        triple = tuple(parse_polynomial(s, "sl2_triple") for s in raw)
    return LieAlgebraData(
        name=ring.name or "lie-algebra",
        basis=ring.vars,
        poisson=ring.poisson,
        invariants_p=invariants,
        sl2_triple=triple,
        slodowy_weights=ring.weights,
    )


def nilpotent_cone(L: LieAlgebraData) -> Ideal:
    """<p_1, ..., p_l>: the common zeros of the invariants."""
    if not L.invariants_p:
        raise InputError("invariants", f"{L.name} has no invariant polynomials")
    return Ideal(L.invariants_p)


def fiber_ideal(
    L: LieAlgebraData,
    jr: JetRing,
    spec: FiberSpec,
    invariants: Optional[Sequence[Polynomial]] = None,
) -> Ideal:
    """<T^j p_i - xi_i^(j)> for 0 <= j <= n.

    Args:
        L: Lie algebra supplying the invariants
        jr: Jet ring of level >= spec.n
        spec: Level and jet coordinates xi
        invariants: Invariants already restricted to a slice, replacing L's
    """
    ps = tuple(invariants) if invariants is not None else L.invariants_p
    if not ps:
        raise InputError("invariants", f"{L.name} has no invariant polynomials")
    if spec.n > jr.level:
        raise InputError("level", f"fiber level {spec.n} exceeds jet level {jr.level}")
    for (i, _), _ in spec.xi:
        if i > len(ps):
            raise InputError("xi", f"invariant index {i} outside 1..{len(ps)}")
    generators = []
    for i, p in enumerate(ps, start=1):
        for j in range(spec.n + 1):
            generators.append(translate_power(p, j) - spec.value(i, j))
    return Ideal(tuple(generators))


def regular_slice_sl2(L: Optional[LieAlgebraData] = None) -> SlodowySlice:
    """The slice f + C e through the regular nilpotent of sl2.

    The slice coordinate s is the point f + s e; its bracket is zero and the
    Casimir restricts to s.
    """
    L = L or make_sl2()
    if L.sl2_triple is None:
        raise InputError("sl2_triple", f"{L.name} has no sl2 triple")
    e, h, f = (_single_variable(p) for p in L.sl2_triple)
    s = VarId("s")
    presentation = RingPresentation(
        vars=(s,),
        relations=(),
        poisson=PoissonStructure.zero((s,)),
        weights=((s, 4),),
        name="sl2-slice-regular",
    )
    restriction = (
        (e, Polynomial.variable(s)),
        (f, Polynomial.constant(1)),
        (h, Polynomial.zero()),
    )
    return SlodowySlice(presentation=presentation, ambient=L, restriction=restriction)


def _single_variable(p: Polynomial) -> VarId:
    if len(p) != 1 or p.degree != 1:
        raise InputError("sl2_triple", "triple entries must be coordinate variables", str(p))
    (monomial, _), = p.items()
    return monomial.variables()[0]


def jet_restriction(slice_: SlodowySlice, n: int) -> Dict[VarId, Polynomial]:
    """Jet of the slice restriction: x_(-j-1) maps to T^j r(x) / j!."""
    images: Dict[VarId, Polynomial] = {}
    for x, r in slice_.restriction:
        for j in range(n + 1):
            images[x.at_level(j)] = translate_power(r, j).scale(Fraction(1, factorial(j)))
    return images


def _products_upto(generators: Sequence[Polynomial], d: int) -> list:
    """All products of at most d generators with total degree at most d."""
    out = [Polynomial.constant(1)]
    frontier = [(0, Polynomial.constant(1))]
    for _ in range(d):
        grown = []
        for start, p in frontier:
            for k in range(start, len(generators)):
                q = p * generators[k]
                if q.degree <= d:
                    grown.append((k, q))
        out.extend(q for _, q in grown)
        frontier = grown
    return out


def center_isomorphism_check(
    L: LieAlgebraData, n: int, d: int, budget: Optional[Budget] = None
) -> CenterIsoReport:
    """Compare the slice center with the restricted jets of the invariants.

    Both sides are truncated at total degree d in J_n of the regular slice
    and compared as graded spaces for the Slodowy weights, together with the
    containment of the invariant side in the center.
    """
    if L.poisson.is_zero:
        return CenterIsoReport(
            level=n,
            degree_bound=d,
            applicable=False,
            reason="the bracket is zero, so every element is central",
        )
    if L.sl2_triple is None or len(L.basis) != 3 or len(L.invariants_p) != 1:
        raise InputError(
            "lie_algebra", "the center comparison is available for sl2 with its regular slice"
        )
    if not jacobi_check(L.poisson, L.presentation, budget):
        raise InputError("poisson", f"{L.name} bracket fails the Jacobi identity")

    slice_ = regular_slice_sl2(L)
    jr = build_jet_ring(slice_.presentation, n)
    center = vp_center_upto(jr, slice_.presentation.poisson_structure, Ideal(()), d, budget)

    images = jet_restriction(slice_, n)
    generators = [
        translate_power(p, j).substitute(images)
        for p in L.invariants_p
        for j in range(n + 1)
    ]
    key = jet_order_key(jr)
    invariant_span: EchelonBasis = EchelonBasis(key)
    for q in _products_upto([g for g in generators if not g.is_zero], d):
        invariant_span.add(dict(q.items()))
    invariants = tuple(Polynomial(v) for v in invariant_span.vectors())

    center_span: EchelonBasis = EchelonBasis(key)
    for z in center:
        center_span.add(dict(z.items()))
    contained = all(center_span.contains(dict(p.items())) for p in invariants)

    weights = jr.jet_weight_map
    report = CenterIsoReport(
        level=n,
        degree_bound=d,
        applicable=True,
        center_dims=graded_dimensions(center, weights),
        invariant_dims=graded_dimensions(invariants, weights),
        contained=contained,
    )
    logger.info(
        f"Center comparison at level {n}, degree <= {d}: "
        f"{'equal' if report.equal else 'different'}"
    )
    return report
