"""Ring presentations, Poisson structures, jet rings and their points."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Tuple

from ..exceptions import InputError
from .ideal import Ideal
from .order import DEGREVLEX
from .polynomial import Polynomial, Scalar, VarId, to_rational


@dataclass(frozen=True)
class PoissonStructure:
    """Bracket matrix on base variables: entry (i, j) is {x^i, x^j}."""

    variables: Tuple[VarId, ...]
    bracket_matrix: Tuple[Tuple[Polynomial, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.variables)
        if len(self.bracket_matrix) != n or any(len(row) != n for row in self.bracket_matrix):
            raise InputError(
                "poisson", f"bracket matrix must be {n}x{n} to match the variables"
            )

    @classmethod
    def zero(cls, variables: Sequence[VarId]) -> "PoissonStructure":
        n = len(variables)
        return cls(
            tuple(variables),
            tuple(tuple(Polynomial.zero() for _ in range(n)) for _ in range(n)),
        )

    @classmethod
    def from_brackets(
        cls,
        variables: Sequence[VarId],
        brackets: Mapping[Tuple[VarId, VarId], Polynomial],
    ) -> "PoissonStructure":
        """Build an antisymmetric matrix from the brackets {x, y} for x < y."""
        index = {v: i for i, v in enumerate(variables)}
        n = len(variables)
        rows = [[Polynomial.zero() for _ in range(n)] for _ in range(n)]
        for (x, y), value in brackets.items():
            rows[index[x]][index[y]] = value
            rows[index[y]][index[x]] = -value
        return cls(tuple(variables), tuple(tuple(r) for r in rows))

    @property
    def size(self) -> int:
        return len(self.variables)

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for row in self.bracket_matrix for e in row)

    def index(self, var: VarId) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise InputError("variable", f"{var} is not a base variable")

    def var_bracket(self, x: VarId, y: VarId) -> Polynomial:
        return self.bracket_matrix[self.index(x)][self.index(y)]

    def is_antisymmetric(self) -> bool:
        n = self.size
        return all(
            self.bracket_matrix[i][j] == -self.bracket_matrix[j][i]
            for i in range(n)
            for j in range(i, n)
        )

    def bracket(self, a: Polynomial, b: Polynomial) -> Polynomial:
        """{a, b} for base polynomials, via the Leibniz rule in both slots."""
        da = [a.partial_derivative(v) for v in self.variables]
        db = [b.partial_derivative(v) for v in self.variables]
        result = Polynomial.zero()
        for i, ai in enumerate(da):
            if ai.is_zero:
                continue
            for j, bj in enumerate(db):
                entry = self.bracket_matrix[i][j]
                if bj.is_zero or entry.is_zero:
                    continue
                result = result + ai * bj * entry
        return result


@dataclass(frozen=True)
class RingPresentation:
    """Spec R for R = Q[vars]/(relations), optionally Poisson and graded."""

    vars: Tuple[VarId, ...]
    relations: Tuple[Polynomial, ...] = ()
    poisson: Optional[PoissonStructure] = None
    weights: Optional[Tuple[Tuple[VarId, int], ...]] = None
    name: str = ""

    def __post_init__(self) -> None:
        allowed = set(self.vars)
        for v in self.vars:
            if v.jet_level != 0:
                raise InputError("vars", f"{v} is not a base variable")
        for rel in self.relations:
            stray = rel.variables() - allowed
            if stray:
                raise InputError(
                    "relations",
                    f"uses undeclared variables {', '.join(sorted(map(str, stray)))}",
                    str(rel),
                )
        if self.poisson is not None and tuple(self.poisson.variables) != self.vars:
            raise InputError("poisson", "bracket matrix variables differ from vars")
        if self.weights is not None:
            missing = allowed - {v for v, _ in self.weights}
            if missing:
                raise InputError(
                    "weights", f"no weight for {', '.join(sorted(map(str, missing)))}"
                )

    @property
    def weight_map(self) -> Optional[Dict[VarId, int]]:
        return dict(self.weights) if self.weights is not None else None

    @property
    def poisson_structure(self) -> PoissonStructure:
        return self.poisson if self.poisson is not None else PoissonStructure.zero(self.vars)

    def relation_ideal(self) -> Ideal:
        return Ideal(self.relations, DEGREVLEX)


@dataclass(frozen=True)
class JetRing:
    """J_n R: jet variables up to level n modulo the relations T^j f_i."""

    base: RingPresentation
    level: int
    jet_vars: Tuple[VarId, ...]
    jet_relations: Ideal
    jet_weights: Optional[Tuple[Tuple[VarId, int], ...]] = None

    @property
    def poisson(self) -> PoissonStructure:
        return self.base.poisson_structure

    @property
    def jet_weight_map(self) -> Optional[Dict[VarId, int]]:
        return dict(self.jet_weights) if self.jet_weights is not None else None

    def variables_at(self, jet_level: int) -> Tuple[VarId, ...]:
        return tuple(v.at_level(jet_level) for v in self.base.vars)

    def contains(self, p: Polynomial) -> bool:
        allowed = set(self.jet_vars)
        return p.variables() <= allowed


@dataclass(frozen=True)
class JetPoint:
    """Rational coordinates on the jet variables of a JetRing."""

    coords: Tuple[Tuple[VarId, Fraction], ...]

    @classmethod
    def from_mapping(cls, coords: Mapping[VarId, Scalar]) -> "JetPoint":
        return cls(tuple(sorted((v, to_rational(c)) for v, c in coords.items())))

    @property
    def level(self) -> int:
        return max((v.jet_level for v, _ in self.coords), default=0)

    def as_dict(self) -> Dict[VarId, Fraction]:
        return dict(self.coords)

    @property
    def is_constant_arc(self) -> bool:
        """True when every coordinate above jet level 0 is zero."""
        return all(c == 0 for v, c in self.coords if v.jet_level > 0)

    def __str__(self) -> str:
        return ", ".join(f"{v}={c}" for v, c in self.coords)


@dataclass(frozen=True)
class ChiralOperator:
    """The derivation a_(k) of J_n R for a source a in the jet ring."""

    ring: JetRing
    source: Polynomial
    mode: int

    def __post_init__(self) -> None:
        if not 0 <= self.mode <= self.ring.level:
            raise InputError(
                "mode", f"mode {self.mode} outside 0..{self.ring.level}"
            )

    @property
    def level(self) -> int:
        return self.ring.level
