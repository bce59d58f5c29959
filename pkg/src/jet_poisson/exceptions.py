"""Custom exceptions for the jet-poisson toolkit."""

from typing import Any, Iterable, Optional


class JetPoissonError(Exception):
    """Base exception for all application errors."""


class ConfigurationError(JetPoissonError):
    """Raised when configuration is missing or invalid."""


class InputError(JetPoissonError):
    """Raised when a ring file or polynomial cannot be parsed."""

    def __init__(
        self, field: str, message: str, text: Optional[str] = None
    ) -> None:
        self.field = field
        self.text = text
        detail = f"Invalid {field}: {message}"
        if text is not None:
            detail += f" (in {text!r})"
        super().__init__(detail)


class ResourceLimitError(JetPoissonError):
    """Raised when a computation exceeds its configured budget."""

    def __init__(self, budget: str, limit: int, observed: int) -> None:
        self.budget = budget
        self.limit = limit
        self.observed = observed
        super().__init__(
            f"Resource limit exceeded for {budget}: {observed} > {limit}"
        )


class MissingAssignmentError(JetPoissonError):
    """Raised when a point does not assign every variable of a polynomial."""

    def __init__(self, variables: Iterable[Any]) -> None:
        self.variables = sorted(str(v) for v in variables)
        super().__init__(f"No value assigned to: {', '.join(self.variables)}")


class HeadroomExceededError(JetPoissonError):
    """Raised when a result would need jet variables beyond the ring's level."""

    def __init__(self, level: int, required: int) -> None:
        self.level = level
        self.required = required
        super().__init__(
            f"Jet level {level} too small: computation needs level {required}"
        )


class PointNotOnVarietyError(JetPoissonError):
    """Raised when a point does not satisfy a defining relation."""

    def __init__(self, relation: str, value: Any) -> None:
        self.relation = relation
        self.value = value
        super().__init__(f"Point is not on the variety: {relation} = {value}")


class NotConvergedError(JetPoissonError):
    """Raised when an iterative computation hits its iteration cap."""

    def __init__(self, iterations: int, last_iterate: Any = None) -> None:
        self.iterations = iterations
        self.last_iterate = last_iterate
        super().__init__(f"No fixed point reached after {iterations} iterations")


class DivisibilityViolationError(JetPoissonError):
    """Raised when a jet rank is not a multiple of level + 1."""

    def __init__(self, rank: int, level: int) -> None:
        self.rank = rank
        self.level = level
        super().__init__(
            f"Rank {rank} of the level-{level} rank matrix "
            f"is not divisible by {level + 1}"
        )


class RankMismatchError(JetPoissonError):
    """Raised when rank M_n(x) is not (n + 1) times rank M_0 at the base point."""

    def __init__(self, rank: int, level: int, base_rank: int) -> None:
        self.rank = rank
        self.level = level
        self.base_rank = base_rank
        super().__init__(
            f"Rank {rank} of the level-{level} rank matrix is not "
            f"{level + 1} x {base_rank} (the rank at the base point); "
            "rk is only defined where the two agree, e.g. on constant arcs"
        )
