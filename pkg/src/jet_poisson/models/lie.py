"""Lie algebra data, fiber parameters and Slodowy slices."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple

from ..exceptions import InputError
from .polynomial import Polynomial, Scalar, VarId, to_rational
from .ring import PoissonStructure, RingPresentation


@dataclass(frozen=True)
class LieAlgebraData:
    """A Lie algebra as a Lie-Poisson structure on its coordinates.

    ``invariants_p`` generate the invariant polynomials (Casimirs);
    ``sl2_triple`` and ``slodowy_weights`` describe a chosen nilpotent.
    """

    name: str
    basis: Tuple[VarId, ...]
    poisson: PoissonStructure
    invariants_p: Tuple[Polynomial, ...] = ()
    sl2_triple: Optional[Tuple[Polynomial, Polynomial, Polynomial]] = None
    slodowy_weights: Optional[Tuple[Tuple[VarId, int], ...]] = None

    @property
    def presentation(self) -> RingPresentation:
        return RingPresentation(
            vars=self.basis,
            relations=(),
            poisson=self.poisson,
            weights=self.slodowy_weights,
            name=self.name,
        )

    @property
    def weight_map(self) -> Optional[Dict[VarId, int]]:
        return dict(self.slodowy_weights) if self.slodowy_weights is not None else None


@dataclass(frozen=True)
class FiberSpec:
    """Jet coordinates xi_i^(j) of a point of the jet scheme of the quotient.

    ``i`` counts invariants from 1; unset coordinates are 0.
    """

    n: int
    xi: Tuple[Tuple[Tuple[int, int], Fraction], ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError("level", f"fiber level must be >= 0, got {self.n}")
        for (i, j), _ in self.xi:
            if i < 1 or not 0 <= j <= self.n:
                raise InputError("xi", f"index ({i}, {j}) outside i >= 1, 0 <= j <= {self.n}")

    @classmethod
    def from_mapping(cls, n: int, xi: Mapping[Tuple[int, int], Scalar]) -> "FiberSpec":
        return cls(n, tuple(sorted((k, to_rational(v)) for k, v in xi.items())))

    def value(self, i: int, j: int) -> Fraction:
        return dict(self.xi).get((i, j), Fraction(0))

    def __str__(self) -> str:
        if not self.xi:
            return "0"
        return ", ".join(f"{i},{j}={v}" for (i, j), v in self.xi)


@dataclass(frozen=True)
class SlodowySlice:
    """A slice presentation with its restriction from the ambient Lie algebra.

    ``restriction`` maps each ambient coordinate to a polynomial on the slice;
    ``weights`` are the Slodowy weights of the slice coordinates.
    """

    presentation: RingPresentation
    ambient: LieAlgebraData
    restriction: Tuple[Tuple[VarId, Polynomial], ...]

    @property
    def restriction_map(self) -> Dict[VarId, Polynomial]:
        return dict(self.restriction)

    def restrict(self, p: Polynomial) -> Polynomial:
        return p.substitute(self.restriction_map)

    @property
    def restricted_invariants(self) -> Tuple[Polynomial, ...]:
        return tuple(self.restrict(p) for p in self.ambient.invariants_p)
