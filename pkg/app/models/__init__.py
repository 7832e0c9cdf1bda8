"""Value types shared by the services and the CLI."""

from app.models.bounds import (
    BoundKind,
    BoundReport,
    BoundSpec,
    ConvergenceVerdict,
    DecayReport,
    KernelSumReport,
    OperatorId,
    StabilityCurve,
)
from app.models.burgers import (
    AnalyticProfile,
    BlowupResult,
    CharacteristicSolution,
)
from app.models.inversion import InversionMethod, InversionReport
from app.models.simulation import (
    ContractionResult,
    LipschitzReport,
    SimConfig,
    Trajectory,
)
from app.models.state import FourierState, ModeRecord

__all__ = [
    # State
    "FourierState",
    "ModeRecord",
    # Simulation
    "SimConfig",
    "Trajectory",
    "ContractionResult",
    "LipschitzReport",
    # Inversion
    "InversionMethod",
    "InversionReport",
    # Burgers
    "AnalyticProfile",
    "CharacteristicSolution",
    "BlowupResult",
    # Estimates
    "BoundKind",
    "BoundSpec",
    "BoundReport",
    "ConvergenceVerdict",
    "KernelSumReport",
    "OperatorId",
    "StabilityCurve",
    "DecayReport",
]
