"""Exact rational scalars and sparse multivariate polynomials.

Polynomials live over a dynamically extensible set of named variables. A
variable is a ``VarId``: a base name plus a jet level ``j`` standing for the
jet variable ``x_(-j-1)``; level 0 is the base coordinate itself.
"""

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import (
    Callable,
    Dict,
    Iterable,
    Iterator,
    Mapping,
    NamedTuple,
    Sequence,
    Tuple,
    Union,
)

from ..exceptions import MissingAssignmentError

Rational = Fraction
Scalar = Union[int, Fraction]

# Degree of the zero polynomial.
MINUS_INFINITY = float("-inf")


def to_rational(value: Union[Scalar, str]) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


class VarId(NamedTuple):
    """A variable ``base_name`` at jet level ``jet_level``.

    Ordering is plain tuple ordering on (base_name, jet_level): total and
    deterministic. Smaller VarIds rank higher in monomial orders.
    """

    base_name: str
    jet_level: int = 0

    def at_level(self, jet_level: int) -> "VarId":
        return VarId(self.base_name, jet_level)

    @property
    def base(self) -> "VarId":
        return VarId(self.base_name, 0)

    def __str__(self) -> str:
        return f"{self.base_name}_(-{self.jet_level + 1})"


@dataclass(frozen=True)
class Monomial:
    """A power product, stored as sorted (VarId, exponent) pairs."""

    powers: Tuple[Tuple[VarId, int], ...] = ()

    @classmethod
    def from_mapping(cls, exponents: Mapping[VarId, int]) -> "Monomial":
        for var, exp in exponents.items():
            if exp < 0:
                raise ValueError(f"negative exponent {exp} for {var}")
        return cls(tuple(sorted((v, e) for v, e in exponents.items() if e)))

    @classmethod
    def of(cls, var: VarId, exponent: int = 1) -> "Monomial":
        return cls(((var, exponent),)) if exponent else cls()

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.powers)

    @property
    def is_one(self) -> bool:
        return not self.powers

    @property
    def jet_depth(self) -> int:
        return max((v.jet_level for v, _ in self.powers), default=0)

    def exponent(self, var: VarId) -> int:
        for v, e in self.powers:
            if v == var:
                return e
        return 0

    def variables(self) -> Tuple[VarId, ...]:
        return tuple(v for v, _ in self.powers)

    def as_dict(self) -> Dict[VarId, int]:
        return dict(self.powers)

    def weighted_degree(self, weights: Mapping[VarId, int]) -> int:
        return sum(weights[v] * e for v, e in self.powers)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not self.powers:
            return other
        if not other.powers:
            return self
        merged = dict(self.powers)
        for v, e in other.powers:
            merged[v] = merged.get(v, 0) + e
        return Monomial(tuple(sorted(merged.items())))

    def divides(self, other: "Monomial") -> bool:
        theirs = dict(other.powers)
        return all(theirs.get(v, 0) >= e for v, e in self.powers)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        remaining = dict(self.powers)
        for v, e in other.powers:
            left = remaining.get(v, 0) - e
            if left < 0:
                raise ValueError(f"{other} does not divide {self}")
            if left:
                remaining[v] = left
            else:
                del remaining[v]
        return Monomial(tuple(sorted(remaining.items())))

    def dense(self, variables: Sequence[VarId]) -> Tuple[int, ...]:
        exps = dict(self.powers)
        return tuple(exps.get(v, 0) for v in variables)

    def __str__(self) -> str:
        if not self.powers:
            return "1"
        return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in self.powers)


def degrevlex_key(monomial: Monomial, variables: Sequence[VarId]) -> tuple:
    """Sort key for graded reverse lexicographic order; bigger key, bigger monomial."""
    exps = monomial.dense(variables)
    return (sum(exps), tuple(-e for e in reversed(exps)))


class Polynomial:
    """Immutable sparse polynomial with Fraction coefficients.

    Zero coefficients are never stored; equality and hashing are structural.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[Monomial, Scalar], None] = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for monomial, coeff in terms.items():
                c = to_rational(coeff)
                if c:
                    clean[monomial] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: Dict[Monomial, Fraction]) -> "Polynomial":
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._from_clean({})

    @classmethod
    def constant(cls, value: Scalar) -> "Polynomial":
        c = to_rational(value)
        return cls._from_clean({Monomial(): c} if c else {})

    @classmethod
    def variable(cls, var: VarId) -> "Polynomial":
        return cls._from_clean({Monomial.of(var): Fraction(1)})

    @classmethod
    def monomial(cls, monomial: Monomial, coeff: Scalar = 1) -> "Polynomial":
        return cls({monomial: coeff})

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(m.is_one for m in self._terms)

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get(Monomial(), Fraction(0))

    @property
    def degree(self) -> Union[int, float]:
        if not self._terms:
            return MINUS_INFINITY
        return max(m.degree for m in self._terms)

    @property
    def jet_depth(self) -> int:
        """Highest jet level among the variables (0 for constants)."""
        return max((m.jet_depth for m in self._terms), default=0)

    def variables(self) -> frozenset:
        return frozenset(v for m in self._terms for v in m.variables())

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self._terms.get(monomial, Fraction(0))

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(other)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result = dict(self._terms)
        for m, c in other._terms.items():
            s = result.get(m, 0) + c
            if s:
                result[m] = s
            else:
                result.pop(m, None)
        return Polynomial._from_clean(result)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._from_clean({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, factor: Scalar) -> "Polynomial":
        c = to_rational(factor)
        if not c:
            return Polynomial.zero()
        return Polynomial._from_clean({m: v * c for m, v in self._terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                s = result.get(m, 0) + c1 * c2
                if s:
                    result[m] = s
                else:
                    result.pop(m, None)
        return Polynomial._from_clean(result)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Polynomial.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus and evaluation -----------------------------------------

    def partial_derivative(self, var: VarId) -> "Polynomial":
        result: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            e = m.exponent(var)
            if e:
                lowered = m / Monomial.of(var)
                result[lowered] = result.get(lowered, 0) + c * e
        return Polynomial({k: v for k, v in result.items()})

    def evaluate(self, point: Mapping[VarId, Scalar]) -> Fraction:
        missing = self.variables() - set(point)
        if missing:
            raise MissingAssignmentError(missing)
        total = Fraction(0)
        for m, c in self._terms.items():
            value = c
            for v, e in m.powers:
                value *= to_rational(point[v]) ** e
            total += value
        return total

    def substitute(self, mapping: Mapping[VarId, Union["Polynomial", Scalar]]) -> "Polynomial":
        """Ring homomorphism sending each mapped variable to its image."""
        images = {
            v: (p if isinstance(p, Polynomial) else Polynomial.constant(p))
            for v, p in mapping.items()
        }
        powers: Dict[Tuple[VarId, int], Polynomial] = {}
        result = Polynomial.zero()
        for m, c in self._terms.items():
            term = Polynomial.constant(c)
            kept: Dict[VarId, int] = {}
            for v, e in m.powers:
                if v in images:
                    key = (v, e)
                    if key not in powers:
                        powers[key] = images[v] ** e
                    term = term * powers[key]
                else:
                    kept[v] = e
            if kept:
                term = term * Polynomial.monomial(Monomial.from_mapping(kept))
            result = result + term
        return result

    def relabel(self, rename: Callable[[VarId], VarId]) -> "Polynomial":
        """Rename variables injectively (e.g. move base variables to a jet level)."""
        result: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            renamed = Monomial.from_mapping({rename(v): e for v, e in m.powers})
            result[renamed] = result.get(renamed, 0) + c
        return Polynomial(result)

    def weighted_top_form(self, weights: Mapping[VarId, int]) -> "Polynomial":
        """Sum of the terms of maximal weight (the initial form)."""
        if not self._terms:
            return self
        top = max(m.weighted_degree(weights) for m in self._terms)
        return Polynomial._from_clean(
            {m: c for m, c in self._terms.items() if m.weighted_degree(weights) == top}
        )

    # -- presentation -----------------------------------------------------

    def sorted_terms(
        self, key: Union[Callable[[Monomial], tuple], None] = None
    ) -> Iterable[Tuple[Monomial, Fraction]]:
        """Terms from largest to smallest; default order is degrevlex."""
        if key is None:
            ranking = sorted(self.variables())
            key = lambda m: degrevlex_key(m, ranking)  # noqa: E731
        return sorted(self._terms.items(), key=lambda item: key(item[0]), reverse=True)

    def to_text(self, key: Union[Callable[[Monomial], tuple], None] = None) -> str:
        """Canonical text, largest term first.

        Coefficients print as ``num/den`` in lowest terms. Integers drop the
        ``/1`` and a coefficient of 1 or -1 on a non-constant monomial is left
        out, so ``4*x_(-1) - y_(-1) + 1/2`` reads back to the same polynomial.
        """
        pieces = []
        for m, c in self.sorted_terms(key):
            if m.is_one:
                piece = str(c)
            elif c == 1:
                piece = str(m)
            elif c == -1:
                piece = f"-{m}"
            else:
                piece = f"{c}*{m}"
            if not pieces:
                pieces.append(piece)
            elif piece.startswith("-"):
                pieces.append(f" - {piece[1:]}")
            else:
                pieces.append(f" + {piece}")
        return "".join(pieces) or "0"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"


def var(name: str, jet_level: int = 0) -> Polynomial:
    """Shorthand for the polynomial ``name_(-jet_level-1)``."""
    return Polynomial.variable(VarId(name, jet_level))


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Add, subtract or multiply two polynomials.

    Args:
        a: Left operand
        b: Right operand
        op: One of ``"add"``, ``"sub"``, ``"mul"``

    Returns:
        The exact result in canonical form
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation: {op}")


def partial_derivative(p: Polynomial, v: VarId) -> Polynomial:
    return p.partial_derivative(v)


def evaluate(p: Polynomial, point: Mapping[VarId, Scalar]) -> Fraction:
    return p.evaluate(point)
