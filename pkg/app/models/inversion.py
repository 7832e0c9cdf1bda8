"""Result types of the linearised operator inversion."""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional

from app.models.state import FourierState


def _pair(value: Optional[complex]) -> Optional[List[float]]:
    return None if value is None else [value.real, value.imag]


class InversionMethod(str, Enum):
    """How (I - c B2(phi, .)(t)) v = f was solved."""

    EXPLICIT = "explicit"
    DENSE = "dense"


@dataclass(eq=False)
class InversionReport:
    """Solution v together with its diagnostics."""

    solution: FourierState
    method: InversionMethod
    residual: float
    c: float
    t: float
    grid: Optional[int] = None
    cutoff: Optional[int] = None
    condition: Optional[float] = None
    periodicity_defect: Optional[float] = None
    tail_norm: float = 0.0
    c_tilde: Optional[complex] = None
    C_const: Optional[complex] = None

    def to_dict(self) -> Dict[str, Any]:
        """Convert the report to a dictionary."""
        return {
            "method": self.method.value,
            "residual": self.residual,
            "c": self.c,
            "t": self.t,
            "grid": self.grid,
            "cutoff": self.cutoff,
            "condition": self.condition,
            "periodicity_defect": self.periodicity_defect,
            "tail_norm": self.tail_norm,
            "c_tilde": _pair(self.c_tilde),
            "C_const": _pair(self.C_const),
            "solution_support_bound": self.solution.support_bound,
        }
