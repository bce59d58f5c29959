"""Rank matrices of jet rings and rank stratification ideals."""

import logging
from collections import Counter
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Optional, Tuple

from ..exceptions import DivisibilityViolationError, InputError, RankMismatchError
from ..models.ideal import Ideal
from ..models.polynomial import Polynomial
from ..models.ring import JetPoint, JetRing, PoissonStructure
from ..models.strata import RankMatrix, Stratum
from ..utils.linalg import bareiss_rank
from .groebner import minors_ideal
from .jet import extension_ideal, translate_power
from .vpa import bracket_on_jet_vars

logger = logging.getLogger(__name__)


def build_rank_matrix(jr: JetRing, ps: PoissonStructure, n: Optional[int] = None) -> RankMatrix:
    """M_n with entries x^i_(p)(T^q x^j) for generators = the base variables.

    Args:
        jr: Jet ring of level >= n
        ps: Poisson structure on the base
        n: Matrix level; defaults to the ring level
    """
    n = jr.level if n is None else n
    if not 0 <= n <= jr.level:
        raise InputError("level", f"rank matrix level {n} outside 0..{jr.level}")
    r = ps.size
    rows = []
    for p in range(n + 1):
        for i in range(r):
            rows.append(
                tuple(
                    bracket_on_jet_vars(ps, jr, i, p, j, q)
                    for q in range(n + 1)
                    for j in range(r)
                )
            )
    return RankMatrix(level=n, generators=tuple(ps.variables), entries=tuple(rows))


def rank_at(M: RankMatrix, x: JetPoint) -> int:
    """Rank of M evaluated at a rational jet point (Bareiss elimination)."""
    return bareiss_rank(M.evaluate(x.as_dict()))


def base_rank_at(M: RankMatrix, x: JetPoint) -> int:
    """Rank of M_0 at pi(x), the image of x in the base."""
    return bareiss_rank(M.evaluate_base(x.as_dict()))


def rk(M: RankMatrix, x: JetPoint) -> int:
    """rank M_n(x) / (n + 1), where it equals rank M_0(pi(x)).

    The identity holds at every constant arc, where the blocks above the
    diagonal vanish. At other arcs over non-regular base points the upper
    blocks can raise the rank, and rk is left undefined there.

    Raises:
        DivisibilityViolationError: If n + 1 does not divide the rank
        RankMismatchError: If the rank is divisible but differs from
            (n + 1) rank M_0(pi(x))
    """
    rank = rank_at(M, x)
    base = base_rank_at(M, x)
    if rank % (M.level + 1):
        logger.info(f"Rank {rank} at {x} is not divisible by {M.level + 1}")
        raise DivisibilityViolationError(rank, M.level)
    if rank != (M.level + 1) * base:
        logger.info(f"Rank {rank} at {x} is not {M.level + 1} x base rank {base}")
        raise RankMismatchError(rank, M.level, base)
    return base


def block_structure_violation(M: RankMatrix) -> Optional[Tuple[int, int]]:
    """First block (p, q) breaking the upper block-triangular shape, if any.

    Lower blocks must vanish and block (p, q) for q >= p must equal
    q!/(q-p)! times T^(q-p) of M_0, with diagonal blocks p! M_0.
    """
    r = M.rank_count
    base = M.block(0, 0)
    for p in range(M.level + 1):
        for q in range(M.level + 1):
            block = M.block(p, q)
            for i in range(r):
                for j in range(r):
                    if q < p:
                        expected = Polynomial.zero()
                    else:
                        expected = translate_power(base[i][j], q - p).scale(
                            Fraction(factorial(q), factorial(q - p))
                        )
                    if block[i][j] != expected:
                        return p, q
    return None


def verify_block_structure(M: RankMatrix) -> bool:
    violation = block_structure_violation(M)
    if violation is not None:
        logger.info(f"Block {violation} of M_{M.level} breaks the block structure")
        return False
    return True


def stratum(jr: JetRing, ps: PoissonStructure, j: int) -> Stratum:
    """Ideals of the points of rank <= j, on the base and on the jet scheme.

    The base ideal is the (j+1)-minors of M_0 plus the base relations; the
    jet ideal extends it to the jet ring without applying T.
    """
    if j < 0:
        raise InputError("j", f"rank bound must be >= 0, got {j}")
    m0 = build_rank_matrix(jr, ps, 0)
    size = m0.size
    rows = [list(row) for row in m0.entries]
    if j + 1 > size:
        minors = Ideal(())
    else:
        minors = minors_ideal(rows, j + 1)
    base = Ideal(minors.generators + jr.base.relations)
    return Stratum(j=j, base_ideal=base, jet_ideal=extension_ideal(jr, base))


def rank_profile(M: RankMatrix, points: Iterable[JetPoint]) -> Dict[int, int]:
    """How many of the points have each value of rk."""
    counts = Counter(rk(M, x) for x in points)
    return dict(sorted(counts.items()))
