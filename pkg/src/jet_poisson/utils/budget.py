"""Resource budgets for Gröbner computations."""

import logging
from dataclasses import dataclass
from typing import Optional

from ..config import DEFAULT_MAX_DEGREE, DEFAULT_MAX_SPAIRS, Settings
from ..exceptions import ResourceLimitError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Budget:
    """Limits on S-pair reductions and on the degree of basis elements."""

    max_spairs: int = DEFAULT_MAX_SPAIRS
    max_degree: int = DEFAULT_MAX_DEGREE

    @classmethod
    def from_settings(cls, settings: Optional[Settings] = None) -> "Budget":
        if settings is None:
            return cls()
        return cls(max_spairs=settings.max_spairs, max_degree=settings.max_degree)


class BudgetMeter:
    """Counts work done against a Budget and raises once it is exhausted."""

    def __init__(self, budget: Optional[Budget] = None) -> None:
        self.budget = budget or Budget()
        self.spairs = 0

    def charge_spair(self) -> None:
        self.spairs += 1
        if self.spairs > self.budget.max_spairs:
            logger.error(
                f"S-pair budget exhausted after {self.budget.max_spairs} reductions"
            )
            raise ResourceLimitError(
                "S-pair reductions", self.budget.max_spairs, self.spairs
            )

    def check_degree(self, degree: int) -> None:
        if degree > self.budget.max_degree:
            logger.error(
                f"Basis element of degree {degree} exceeds the degree budget "
                f"{self.budget.max_degree}"
            )
            raise ResourceLimitError("basis degree", self.budget.max_degree, degree)
