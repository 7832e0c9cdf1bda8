"""Configuration and result types for the truncated KdV evolution."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.models.state import FourierState


class SimConfig(BaseModel):
    """Parameters of one Galerkin-truncated integration."""

    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=1, description="Galerkin truncation size")
    dt: float = Field(gt=0, description="RK4 time step")
    T: float = Field(ge=0, description="Final time")
    n: int = Field(default=0, ge=0, description="Splitting parameter")
    integrator: Literal["rk4"] = Field(
        default="rk4", description="Time integrator"
    )
    record_stride: int = Field(
        default=1, ge=1, description="Record every k-th step"
    )
    substeps: Optional[int] = Field(
        default=None,
        ge=1,
        description="RK4 steps per dt; from the fastest phase when unset",
    )


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Recorded samples of a truncated evolution.

    ``times`` is strictly increasing, starts at 0 and ends at T; every
    state is real-valued. Modes with |k| > m keep their initial values.
    """

    config: SimConfig
    times: np.ndarray
    states: List[FourierState]

    def __post_init__(self) -> None:
        if len(self.times) != len(self.states):
            raise ValueError("times and states must have equal length")

    def __len__(self) -> int:
        return len(self.states)

    @property
    def m(self) -> int:
        return self.config.m

    @property
    def initial(self) -> FourierState:
        return self.states[0]

    @property
    def final(self) -> FourierState:
        return self.states[-1]

    @property
    def bound(self) -> int:
        """Dense half-width: m, or the frozen tail if it reaches further."""
        return max([self.m] + [state.support_bound for state in self.states])

    def dense(self) -> np.ndarray:
        """Stacked dense coefficients, shape (samples, 2*bound+1)."""
        bound = self.bound
        return np.stack([state.to_dense(bound) for state in self.states])

    def energy_series(self) -> np.ndarray:
        """Squared L2 norm of every sample."""
        return np.sum(np.abs(self.dense()) ** 2, axis=1)

    def energy_drift(self) -> float:
        """Max over samples of | ||v(t)||_0 - ||v0||_0 | / ||v0||_0."""
        norms = np.sqrt(self.energy_series())
        if norms[0] == 0:
            return float(np.max(norms))
        return float(np.max(np.abs(norms - norms[0])) / norms[0])

    def to_dict(self) -> Dict[str, Any]:
        """Convert the trajectory summary to a dictionary."""
        return {
            "config": self.config.model_dump(),
            "samples": len(self),
            "t_final": float(self.times[-1]),
            "energy_drift": self.energy_drift(),
        }


@dataclass
class ContractionResult:
    """Outcome of the fixed-point solve on [0, T*]."""

    trajectory: Trajectory
    iterations: int
    ratios: List[float]
    differences: List[float]
    converged: bool
    mode: Literal["first", "third"]

    @property
    def max_ratio(self) -> float:
        return max(self.ratios, default=0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mode": self.mode,
            "iterations": self.iterations,
            "converged": self.converged,
            "ratios": list(self.ratios),
            "differences": list(self.differences),
            "t_star": float(self.trajectory.times[-1]),
        }


@dataclass(eq=False)
class LipschitzReport:
    """Ratio ||v(t) - w(t)||_theta / ||v0 - w0||_theta along two runs."""

    theta: float
    times: np.ndarray
    ratios: np.ndarray
    degenerate: bool = False
    growth_rate: float = 0.0
    notes: List[str] = field(default_factory=list)

    @property
    def max_ratio(self) -> float:
        return float(np.max(self.ratios)) if len(self.ratios) else 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theta": self.theta,
            "degenerate": self.degenerate,
            "max_ratio": self.max_ratio,
            "growth_rate": self.growth_rate,
            "samples": int(len(self.times)),
            "notes": list(self.notes),
        }
