"""Rank matrices and rank strata."""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Mapping, Tuple

from .ideal import Ideal
from .polynomial import Polynomial, VarId


@dataclass(frozen=True)
class RankMatrix:
    """M_n: entry ((i, p), (j, q)) is x^i_(p)(T^q x^j).

    Rows and columns are ordered block-major: index p * r + i for mode p and
    generator i.
    """

    level: int
    generators: Tuple[VarId, ...]
    entries: Tuple[Tuple[Polynomial, ...], ...]

    @property
    def rank_count(self) -> int:
        return len(self.generators)

    @property
    def size(self) -> int:
        return (self.level + 1) * self.rank_count

    def entry(self, i: int, p: int, j: int, q: int) -> Polynomial:
        r = self.rank_count
        return self.entries[p * r + i][q * r + j]

    def block(self, p: int, q: int) -> List[List[Polynomial]]:
        r = self.rank_count
        return [
            [self.entries[p * r + i][q * r + j] for j in range(r)] for i in range(r)
        ]

    def evaluate(self, point: Mapping[VarId, Fraction]) -> List[List[Fraction]]:
        return [[e.evaluate(point) for e in row] for row in self.entries]

    def evaluate_base(self, point: Mapping[VarId, Fraction]) -> List[List[Fraction]]:
        """M_0 at the image of ``point`` in the base: block (0, 0) only."""
        return [[e.evaluate(point) for e in row] for row in self.block(0, 0)]

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries)


@dataclass(frozen=True)
class Stratum:
    """Points where the base rank is at most ``j``."""

    j: int
    base_ideal: Ideal
    jet_ideal: Ideal
