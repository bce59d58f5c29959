"""Exact linear algebra over Q on sparse vectors and dense matrices."""

from fractions import Fraction
from math import lcm
from typing import Callable, Dict, Generic, Hashable, List, Sequence, TypeVar

Col = TypeVar("Col", bound=Hashable)
Vector = Dict[Col, Fraction]


class EchelonBasis(Generic[Col]):
    """Reduced row echelon basis of a subspace spanned by sparse vectors.

    The pivot of a row is its largest column under ``key``; rows are monic at
    their pivot and vanish at every other pivot, so the basis is canonical.
    """

    def __init__(self, key: Callable[[Col], object]) -> None:
        self.key = key
        self.rows: Dict[Col, Vector] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vector: Vector) -> Vector:
        v = {c: x for c, x in vector.items() if x}
        for pivot in [p for p in v if p in self.rows]:
            factor = v.get(pivot)
            if not factor:
                continue
            for c, x in self.rows[pivot].items():
                y = v.get(c, 0) - factor * x
                if y:
                    v[c] = y
                else:
                    v.pop(c, None)
        return v

    def add(self, vector: Vector) -> bool:
        """Insert a vector; returns False if it was already in the span."""
        r = self.reduce(vector)
        if not r:
            return False
        pivot = max(r, key=self.key)
        lead = r[pivot]
        r = {c: x / lead for c, x in r.items()}
        for row in self.rows.values():
            factor = row.get(pivot)
            if factor:
                for c, x in r.items():
                    y = row.get(c, 0) - factor * x
                    if y:
                        row[c] = y
                    else:
                        row.pop(c, None)
        self.rows[pivot] = r
        return True

    def contains(self, vector: Vector) -> bool:
        return not self.reduce(vector)

    def pivots(self) -> List[Col]:
        return sorted(self.rows, key=self.key, reverse=True)

    def vectors(self) -> List[Vector]:
        return [dict(self.rows[p]) for p in self.pivots()]


def kernel(vectors: Sequence[Vector], key: Callable[[Col], object]) -> List[Dict[int, Fraction]]:
    """Basis of {c : sum_s c_s vectors[s] = 0}, as sparse maps s -> c_s."""
    echelon: Dict[Col, tuple] = {}
    null: List[Dict[int, Fraction]] = []
    for s, vector in enumerate(vectors):
        v = {c: x for c, x in vector.items() if x}
        combo: Dict[int, Fraction] = {s: Fraction(1)}
        while v:
            pivot = max(v, key=key)
            if pivot not in echelon:
                break
            row, row_combo = echelon[pivot]
            factor = v[pivot] / row[pivot]
            for c, x in row.items():
                y = v.get(c, 0) - factor * x
                if y:
                    v[c] = y
                else:
                    v.pop(c, None)
            for t, x in row_combo.items():
                y = combo.get(t, 0) - factor * x
                if y:
                    combo[t] = y
                else:
                    combo.pop(t, None)
        if v:
            echelon[max(v, key=key)] = (v, combo)
        else:
            null.append(combo)
    return null


def _integer_rows(matrix: Sequence[Sequence[Fraction]]) -> List[List[int]]:
    rows = []
    for row in matrix:
        scale = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        rows.append([int(Fraction(x) * scale) for x in row])
    return rows


def bareiss_rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    """Rank via fraction-free (Bareiss) elimination on an integer-scaled copy."""
    m = _integer_rows(matrix)
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, n_rows):
            a = m[i][col]
            for j in range(col + 1, n_cols):
                m[i][j] = (p * m[i][j] - a * m[rank][j]) // prev
            m[i][col] = 0
        prev = p
        rank += 1
        if rank == n_rows:
            break
    return rank
