"""Multilinear convolution operators on Fourier states."""

from app.services.operators.multilinear import (
    b1,
    b2,
    b3,
    b4,
    b4_1,
    b4_2,
    product,
    product_mean,
    r3,
    r3_paired,
)
from app.services.operators.phases import (
    PhaseCache,
    cubic_phase,
    phase_factor,
    quartic_phase,
)
from app.services.operators.resonance import (
    ResonanceClass,
    ResonantTriple,
    a_res,
    enumerate_resonant,
    resonance_split,
    resonant_class_sums,
    resonant_sum,
)
from app.services.operators.split import (
    b30_n,
    b40_1_n,
    b40_2_n,
    b40_n,
    r3_nres0_n,
    r3_nres1_n,
)

__all__ = [
    # Phases
    "PhaseCache",
    "cubic_phase",
    "quartic_phase",
    "phase_factor",
    # Free operators
    "b1",
    "b2",
    "r3",
    "r3_paired",
    "b3",
    "b4",
    "b4_1",
    "b4_2",
    "product",
    "product_mean",
    # Resonance
    "ResonanceClass",
    "ResonantTriple",
    "enumerate_resonant",
    "resonance_split",
    "resonant_class_sums",
    "resonant_sum",
    "a_res",
    # Split family
    "r3_nres0_n",
    "r3_nres1_n",
    "b30_n",
    "b40_1_n",
    "b40_2_n",
    "b40_n",
]
