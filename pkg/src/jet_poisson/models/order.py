"""Monomial orders."""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, List, Mapping, Sequence, Tuple

from .polynomial import Monomial, Polynomial, VarId


class OrderKind(str, Enum):
    DEGREVLEX = "degrevlex"
    LEX = "lex"
    WEIGHTED = "weighted"
    BLOCK = "block"


def _degrevlex(exps: Tuple[int, ...]) -> tuple:
    return (sum(exps), tuple(-e for e in reversed(exps)))


@dataclass(frozen=True)
class MonomialOrder:
    """A term order on monomials over any finite set of variables.

    Variables are ranked by ``ranking`` first (earlier is bigger), then by
    VarId order. ``weighted`` compares weights and breaks ties by degrevlex;
    ``block`` compares the ``eliminate`` variables first (degrevlex), then
    the rest (degrevlex).
    """

    kind: OrderKind = OrderKind.DEGREVLEX
    weights: Tuple[Tuple[VarId, int], ...] = ()
    eliminate: frozenset = frozenset()
    ranking: Tuple[VarId, ...] = ()

    @classmethod
    def degrevlex(cls, ranking: Sequence[VarId] = ()) -> "MonomialOrder":
        return cls(OrderKind.DEGREVLEX, ranking=tuple(ranking))

    @classmethod
    def lex(cls, ranking: Sequence[VarId] = ()) -> "MonomialOrder":
        return cls(OrderKind.LEX, ranking=tuple(ranking))

    @classmethod
    def weighted(cls, weights: Mapping[VarId, int]) -> "MonomialOrder":
        for v, w in weights.items():
            if w < 0:
                raise ValueError(f"weight of {v} must be non-negative, got {w}")
        return cls(OrderKind.WEIGHTED, weights=tuple(sorted(weights.items())))

    @classmethod
    def block(cls, eliminate: Iterable[VarId]) -> "MonomialOrder":
        return cls(OrderKind.BLOCK, eliminate=frozenset(eliminate))

    @property
    def weight_map(self) -> Mapping[VarId, int]:
        return dict(self.weights)

    def variable_order(self, variables: Iterable[VarId]) -> List[VarId]:
        """Rank the given variables, largest first."""
        pool = set(variables)
        ranked = [v for v in self.ranking if v in pool]
        rest = sorted(pool - set(ranked))
        ordered = ranked + rest
        if self.kind is OrderKind.BLOCK:
            ordered = [v for v in ordered if v in self.eliminate] + [
                v for v in ordered if v not in self.eliminate
            ]
        return ordered

    def exponent_key(
        self, variables: Sequence[VarId]
    ) -> Callable[[Tuple[int, ...]], tuple]:
        """Key on dense exponent tuples laid out as ``variables``.

        ``variables`` must come from ``variable_order``.
        """
        if self.kind is OrderKind.LEX:
            return lambda exps: exps
        if self.kind is OrderKind.DEGREVLEX:
            return _degrevlex
        if self.kind is OrderKind.WEIGHTED:
            table = self.weight_map
            w = tuple(table.get(v, 0) for v in variables)

            def weighted_key(exps: Tuple[int, ...]) -> tuple:
                return (sum(a * b for a, b in zip(w, exps)), _degrevlex(exps))

            return weighted_key
        split = sum(1 for v in variables if v in self.eliminate)

        def block_key(exps: Tuple[int, ...]) -> tuple:
            return (_degrevlex(exps[:split]), _degrevlex(exps[split:]))

        return block_key

    def monomial_key(self, variables: Sequence[VarId]) -> Callable[[Monomial], tuple]:
        """Key on sparse monomials over ``variables`` (already ranked)."""
        layout = list(variables)
        dense_key = self.exponent_key(layout)
        return lambda monomial: dense_key(monomial.dense(layout))

    def leading_term(self, p: Polynomial) -> Tuple[Monomial, object]:
        if p.is_zero:
            raise ValueError("the zero polynomial has no leading term")
        layout = self.variable_order(p.variables())
        key = self.monomial_key(layout)
        return max(p.items(), key=lambda item: key(item[0]))

    def format(self, p: Polynomial) -> str:
        """Canonical text of ``p`` with terms in this order."""
        layout = self.variable_order(p.variables())
        return p.to_text(self.monomial_key(layout))


DEGREVLEX = MonomialOrder.degrevlex()
