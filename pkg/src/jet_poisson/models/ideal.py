"""Polynomial ideals with a lazily computed reduced Gröbner basis."""

import threading
from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple

from .order import DEGREVLEX, MonomialOrder
from .polynomial import Polynomial


@dataclass(frozen=True)
class Ideal:
    """An ideal given by generators and a monomial order.

    ``gb_cache`` is filled at most once (see ``services.groebner``); after that
    the value is read-only. Zero generators are dropped on construction.
    """

    generators: Tuple[Polynomial, ...]
    order: MonomialOrder = DEGREVLEX
    _basis: list = field(default_factory=list, init=False, repr=False, compare=False)
    _lock: threading.Lock = field(
        default_factory=threading.Lock, init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "generators", tuple(g for g in self.generators if not g.is_zero)
        )

    @classmethod
    def of(
        cls, generators: Iterable[Polynomial], order: MonomialOrder = DEGREVLEX
    ) -> "Ideal":
        return cls(tuple(generators), order)

    @classmethod
    def unit(cls, order: MonomialOrder = DEGREVLEX) -> "Ideal":
        return cls((Polynomial.constant(1),), order)

    @property
    def gb_cache(self) -> Optional[Tuple[Polynomial, ...]]:
        return self._basis[0] if self._basis else None

    def _store_basis(self, basis: Tuple[Polynomial, ...]) -> None:
        if not self._basis:
            self._basis.append(tuple(basis))

    def variables(self) -> frozenset:
        found: set = set()
        for g in self.generators:
            found |= g.variables()
        return frozenset(found)

    def with_order(self, order: MonomialOrder) -> "Ideal":
        return Ideal(self.generators, order)

    def extend(self, generators: Iterable[Polynomial]) -> "Ideal":
        return Ideal(self.generators + tuple(generators), self.order)

    def __add__(self, other: "Ideal") -> "Ideal":
        return self.extend(other.generators)

    def __str__(self) -> str:
        inner = ", ".join(self.order.format(g) for g in self.generators)
        return f"<{inner}>"
