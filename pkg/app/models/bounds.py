"""Bound specifications and reports for the estimates laboratory."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class OperatorId(str, Enum):
    """Operators whose norm inequalities can be tested."""

    B1 = "B1"
    B2 = "B2"
    PRODUCT = "product"
    B3 = "B3"
    B4 = "B4"
    R3 = "R3"
    R3_LIPSCHITZ = "R3_lipschitz"
    A_RES = "A_res"
    B30 = "B30"
    B30_PLACED = "B30_placed"
    R3_NRES1 = "R3_nres1"
    B40_1 = "B40_1"
    B40_2 = "B40_2"
    Q_TERM = "Q"


class BoundKind(str, Enum):
    """Whether a bound carries a closed-form constant."""

    CLOSED = "closed"
    EMPIRICAL = "empirical"


class ConvergenceVerdict(str, Enum):
    """Outcome of a truncated lattice-sum experiment."""

    CONVERGING = "converging"
    DIVERGING = "diverging"
    INCONCLUSIVE = "inconclusive"


class BoundSpec(BaseModel):
    """One norm inequality ||Op(inputs)||_out <= C prod ||input_i||_in_i."""

    model_config = ConfigDict(frozen=True)

    bound_id: str = Field(description="Catalog identifier, e.g. 'B3'")
    operator: OperatorId
    input_exponents: Tuple[float, ...] = Field(
        description="Sobolev index attached to each operator argument"
    )
    output_exponent: float
    constant: Optional[float] = Field(
        default=None, description="Closed-form constant, None if empirical"
    )
    parameters: Dict[str, float] = Field(default_factory=dict)
    description: str = ""

    @model_validator(mode="after")
    def check_constant(self) -> "BoundSpec":
        """Closed constants must be finite and positive."""
        if self.constant is not None and not (
            0.0 < self.constant < float("inf")
        ):
            raise ValueError(f"constant must be positive, got {self.constant}")
        if not self.input_exponents:
            raise ValueError("at least one input exponent is required")
        return self

    @property
    def kind(self) -> BoundKind:
        if self.constant is None:
            return BoundKind.EMPIRICAL
        return BoundKind.CLOSED


@dataclass
class BoundReport:
    """Result of a randomized batch for one BoundSpec."""

    spec: BoundSpec
    m: int
    trials: int
    ratios: List[float]
    worst_trial: int
    passed: Optional[bool]
    seed: int = 0
    slack: float = 1.01

    @property
    def bound_id(self) -> str:
        return self.spec.bound_id

    @property
    def max_ratio(self) -> float:
        return max(self.ratios, default=0.0)

    @property
    def constant(self) -> Optional[float]:
        return self.spec.constant

    def to_dict(self) -> Dict[str, Any]:
        """Convert the report to a dictionary."""
        return {
            "bound_id": self.bound_id,
            "operator": self.spec.operator.value,
            "kind": self.spec.kind.value,
            "parameters": dict(self.spec.parameters),
            "m": self.m,
            "trials": self.trials,
            "max_ratio": self.max_ratio,
            "constant": self.constant,
            "worst_trial": self.worst_trial,
            "seed": self.seed,
            "passed": self.passed,
        }


@dataclass
class KernelSumReport:
    """Partial sums of the cubed lattice kernel at nested cutoffs."""

    p: float
    gamma: float
    delta: float
    cutoffs: List[int]
    partial_sums: List[float]
    increment_ratio: float
    expected_ratio: float
    verdict: ConvergenceVerdict
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "gamma": self.gamma,
            "delta": self.delta,
            "cutoffs": list(self.cutoffs),
            "partial_sums": list(self.partial_sums),
            "increment_ratio": self.increment_ratio,
            "expected_ratio": self.expected_ratio,
            "verdict": self.verdict.value,
            "notes": list(self.notes),
        }


@dataclass
class StabilityCurve:
    """Empirical max ratio of one bound as the truncation size grows."""

    bound_id: str
    m_values: List[int]
    max_ratios: List[float]
    tolerance: float = 0.2

    @property
    def stable(self) -> bool:
        """Each doubling of m changes the max ratio by at most 20%."""
        pairs = zip(self.max_ratios, self.max_ratios[1:])
        return all(
            abs(b - a) <= self.tolerance * max(a, b) for a, b in pairs
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "bound_id": self.bound_id,
            "m_values": list(self.m_values),
            "max_ratios": list(self.max_ratios),
            "stable": self.stable,
        }


@dataclass
class DecayReport:
    """Observed n-decay of a split operator against the predicted rate."""

    s: float
    n_small: int
    n_large: int
    max_small: float
    max_large: float
    slack: float = 1.01

    @property
    def observed(self) -> float:
        if self.max_small == 0:
            return 0.0
        return self.max_large / self.max_small

    @property
    def expected(self) -> float:
        return (self.n_small / self.n_large) ** self.s

    @property
    def consistent(self) -> bool:
        return self.observed <= self.expected * self.slack

    def to_dict(self) -> Dict[str, Any]:
        return {
            "s": self.s,
            "n_small": self.n_small,
            "n_large": self.n_large,
            "max_small": self.max_small,
            "max_large": self.max_large,
            "observed": self.observed,
            "expected": self.expected,
            "consistent": self.consistent,
        }
