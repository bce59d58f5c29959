"""Result objects returned by decisions and checks."""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .polynomial import Polynomial, VarId


@dataclass(frozen=True)
class ChiralCheck:
    """Outcome of a chirality test; falsy when a counterexample was found."""

    is_chiral: bool
    counterexample: Optional[Tuple[VarId, int, Polynomial]] = None

    def __bool__(self) -> bool:
        return self.is_chiral

    def __str__(self) -> str:
        if self.is_chiral:
            return "chiral"
        x, k, g = self.counterexample
        return f"not chiral: {x.base_name}_({k}) applied to {g} leaves the ideal"

    def to_dict(self) -> dict:
        if self.counterexample is None:
            return {"chiral": self.is_chiral, "counterexample": None}
        x, k, g = self.counterexample
        return {
            "chiral": self.is_chiral,
            "counterexample": {"source": x.base_name, "mode": k, "generator": str(g)},
        }


@dataclass(frozen=True)
class AxiomFailure:
    """One failing sample, in canonical polynomial text."""

    a: str
    b: str
    c: str
    lhs: str
    rhs: str

    def to_dict(self) -> Dict[str, str]:
        return {"a": self.a, "b": self.b, "c": self.c, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class AxiomResult:
    axiom: str
    samples: int
    failures: List[AxiomFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "samples": self.samples,
            "failures": [f.to_dict() for f in self.failures],
        }


@dataclass
class AxiomReport:
    """Per-axiom outcome of a randomized axiom run."""

    level: int
    seed: int
    results: List[AxiomResult]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def result(self, axiom: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "seed": self.seed,
            "results": [r.to_dict() for r in self.results],
        }

    def __str__(self) -> str:
        lines = [f"Axiom check at level {self.level} (seed {self.seed}):"]
        for r in self.results:
            status = "pass" if r.passed else f"FAIL ({len(r.failures)})"
            lines.append(f"  {r.axiom}: {status} over {r.samples} samples")
        return "\n".join(lines)


@dataclass
class CenterIsoReport:
    """Graded comparison of a slice center with the restricted invariants."""

    level: int
    degree_bound: int
    applicable: bool
    center_dims: Dict[int, int] = field(default_factory=dict)
    invariant_dims: Dict[int, int] = field(default_factory=dict)
    contained: bool = False
    reason: str = ""

    @property
    def equal(self) -> bool:
        return self.applicable and self.contained and self.center_dims == self.invariant_dims

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "degree_bound": self.degree_bound,
            "applicable": self.applicable,
            "center_dims": {str(k): v for k, v in sorted(self.center_dims.items())},
            "invariant_dims": {str(k): v for k, v in sorted(self.invariant_dims.items())},
            "contained": self.contained,
            "equal": self.equal,
            "reason": self.reason,
        }

    def __str__(self) -> str:
        if not self.applicable:
            return f"Center comparison inapplicable: {self.reason}"
        dims = ", ".join(
            f"{w}: {self.center_dims.get(w, 0)}/{self.invariant_dims.get(w, 0)}"
            for w in sorted(set(self.center_dims) | set(self.invariant_dims))
        )
        verdict = "isomorphic" if self.equal else "NOT isomorphic"
        return (
            f"Center vs invariants at level {self.level}, degree <= {self.degree_bound}:\n"
            f"  Dimensions by weight (center/invariants): {dims}\n"
            f"  Invariants contained in center: {self.contained}\n"
            f"  Result: {verdict}"
        )
