"""Canonical polynomial grammar and the JSON ring format."""

import json
import logging
import re
from fractions import Fraction
from importlib import resources
from pathlib import Path
from tokenize import TokenError
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from sympy import Poly, QQ, Symbol
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys.polyerrors import BasePolynomialError

from ..exceptions import InputError
from ..models.order import DEGREVLEX, MonomialOrder
from ..models.polynomial import Monomial, Polynomial, VarId
from ..models.ring import PoissonStructure, RingPresentation
from ..services.vpa import jacobi_check

logger = logging.getLogger(__name__)

_TRANSFORMATIONS = standard_transformations + (convert_xor,)
_VARIABLE = re.compile(r"([A-Za-z][A-Za-z0-9]*)(?:_\(\s*-\s*(\d+)\s*\))?")
_ALLOWED = re.compile(r"^[A-Za-z0-9_\s+\-*/^()]*$")
_XI_ENTRY = r"\s*(\d+)\s*,\s*(\d+)\s*=\s*([-+]?\d+(?:/\d+)?)\s*"
_XI_LIST = re.compile(rf"{_XI_ENTRY}(?:,{_XI_ENTRY})*")

FIXTURES = ("sl2.json", "sl2_slice_regular.json", "symplectic_plane.json")


def parse_variable(text: str) -> VarId:
    """Parse ``name`` or ``name_(-k)`` (k >= 1) into a VarId."""
    match = _VARIABLE.fullmatch(text.strip())
    if not match:
        raise InputError("variable", "expected name or name_(-k)", text)
    name, index = match.group(1), match.group(2)
    if index is None:
        return VarId(name, 0)
    if int(index) < 1:
        raise InputError("variable", "jet index must be at least 1", text)
    return VarId(name, int(index) - 1)


def parse_polynomial(text: str, field: str = "polynomial") -> Polynomial:
    """Parse the canonical grammar: rationals p/q, ``^`` or ``**``, jet variables.

    Raises:
        InputError: If the text is not a polynomial with rational coefficients
    """
    if not isinstance(text, str) or not text.strip():
        raise InputError(field, "expected a non-empty polynomial string", str(text))
    if not _ALLOWED.match(text):
        raise InputError(field, "unexpected character (decimals are not allowed, use p/q)", text)

    placeholders: Dict[str, VarId] = {}
    seen: Dict[VarId, str] = {}

    def substitute(match: "re.Match") -> str:
        var = parse_variable(match.group(0))
        if var not in seen:
            seen[var] = f"_v{len(seen)}"
            placeholders[seen[var]] = var
        return seen[var]

    masked = _VARIABLE.sub(substitute, text)
    symbols = {name: Symbol(name) for name in placeholders}
    try:
        expr = parse_expr(masked, local_dict=dict(symbols), transformations=_TRANSFORMATIONS)
    except (SyntaxError, TypeError, ValueError, TokenError) as e:
        raise InputError(field, f"cannot parse ({e.__class__.__name__})", text)

    if not placeholders:
        if not expr.is_Rational:
            raise InputError(field, "constant is not a rational number", text)
        return Polynomial.constant(Fraction(int(expr.p), int(expr.q)))

    gens = [symbols[name] for name in sorted(placeholders)]
    try:
        poly = Poly(expr, *gens, domain=QQ)
    except BasePolynomialError as e:
        raise InputError(field, f"not a polynomial ({e})", text)

    variables = [placeholders[str(g)] for g in gens]
    terms: Dict[Monomial, Fraction] = {}
    for exponents, coeff in poly.terms():
        monomial = Monomial.from_mapping(dict(zip(variables, exponents)))
        terms[monomial] = Fraction(int(coeff.p), int(coeff.q))
    return Polynomial(terms)


def format_polynomial(p: Polynomial, order: MonomialOrder = DEGREVLEX) -> str:
    """Canonical text, largest term first; parses back to ``p``."""
    return order.format(p)


def parse_point(text: str) -> Dict[VarId, Fraction]:
    """Parse ``e=1,h=0,f=-1/2`` into coordinates."""
    coords: Dict[VarId, Fraction] = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, sep, value = item.partition("=")
        if not sep:
            raise InputError("point", "expected name=value", item)
        coords[parse_variable(name)] = _rational(value, "point")
    return coords


def parse_xi(text: str) -> Dict[Tuple[int, int], Fraction]:
    """Parse ``1,0=2,1,1=0`` into {(i, j): value}."""
    xi: Dict[Tuple[int, int], Fraction] = {}
    if not text.strip():
        return xi
    if not _XI_LIST.fullmatch(text):
        raise InputError("xi", "expected comma-separated i,j=value entries", text)
    for i, j, value in re.findall(_XI_ENTRY, text):
        xi[(int(i), int(j))] = _rational(value, "xi")
    return xi


def _rational(text: str, field: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(field, "expected a rational number", text)


def _polys(items: Any, field: str) -> List[Polynomial]:
    if not isinstance(items, list):
        raise InputError(field, "expected a list of polynomial strings")
    return [parse_polynomial(s, field) for s in items]


def _base_vars(raw: Any) -> Tuple[VarId, ...]:
    if not isinstance(raw, list) or not raw:
        raise InputError("vars", "expected a non-empty list of variable names")
    out = []
    for name in raw:
        var = parse_variable(str(name))
        if var.jet_level:
            raise InputError("vars", "base variables must be at jet level 0", str(name))
        out.append(var)
    if len(set(out)) != len(out):
        raise InputError("vars", "duplicate variable names")
    return tuple(out)


def _poisson(raw: Any, variables: Tuple[VarId, ...]) -> Optional[PoissonStructure]:
    if raw is None:
        return None
    n = len(variables)
    if not isinstance(raw, list) or len(raw) != n or any(
        not isinstance(row, list) or len(row) != n for row in raw
    ):
        raise InputError("poisson", f"expected a {n}x{n} matrix of polynomial strings")
    matrix = tuple(tuple(parse_polynomial(s, "poisson") for s in row) for row in raw)
    return PoissonStructure(variables, matrix)


def _weights(raw: Any, variables: Tuple[VarId, ...]) -> Optional[Tuple[Tuple[VarId, int], ...]]:
    if raw is None:
        return None
    if not isinstance(raw, dict):
        raise InputError("weights", "expected an object mapping variables to integers")
    out = []
    for name, value in raw.items():
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise InputError("weights", "weights must be non-negative integers", f"{name}: {value}")
        out.append((parse_variable(name), value))
    return tuple(sorted(out))


def read_document(source: Union[str, Path, Mapping[str, Any]]) -> Dict[str, Any]:
    """Load a ring document from a path, a JSON string or a mapping."""
    if isinstance(source, Mapping):
        return dict(source)
    try:
        if isinstance(source, str) and source.lstrip().startswith("{"):
            text = source
        else:
            text = Path(source).read_text(encoding="utf-8")
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError("json", f"malformed JSON at line {e.lineno}: {e.msg}", str(source))
    except OSError as e:
        raise InputError("json", f"cannot read file: {e.strerror}", str(source))
    if not isinstance(data, dict):
        raise InputError("json", "top level must be an object", str(source))
    return data


def load_ring(source: Union[str, Path, Mapping[str, Any]]) -> RingPresentation:
    """Build a RingPresentation from the JSON ring format.

    Keys: ``vars``, ``relations``, ``poisson`` (row i, column j is {x^i, x^j}),
    ``weights`` and ``name``; unknown keys are ignored.

    Raises:
        InputError: On malformed fields, or a bracket that is not
            antisymmetric or fails the Jacobi check
    """
    data = read_document(source)
    variables = _base_vars(data.get("vars"))
    ring = RingPresentation(
        vars=variables,
        relations=tuple(_polys(data.get("relations", []), "relations")),
        poisson=_poisson(data.get("poisson"), variables),
        weights=_weights(data.get("weights"), variables),
        name=str(data.get("name", "")),
    )
    if ring.poisson is not None:
        if not ring.poisson.is_antisymmetric():
            raise InputError("poisson", "bracket matrix is not antisymmetric")
        if not jacobi_check(ring.poisson, ring):
            raise InputError(
                "poisson", "bracket fails the Jacobi identity or does not preserve the relations"
            )
    logger.debug(f"Loaded ring {ring.name or '(unnamed)'} with {len(variables)} variables")
    return ring


def fixture_path(name: str) -> Path:
    """Path of a ring file shipped in ``jet_poisson.data``."""
    if name not in FIXTURES:
        raise InputError("fixture", f"unknown fixture, expected one of {', '.join(FIXTURES)}", name)
    return Path(str(resources.files("jet_poisson.data").joinpath(name)))
