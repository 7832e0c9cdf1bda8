"""Numerical services of the laboratory."""

from app.services.burgers import blowup_scan, lam, omega_sweep, solve_implicit
from app.services.inverse_operator import (
    apply_L,
    invert_dense,
    invert_explicit,
)
from app.services.spectrum import (
    project,
    random_state,
    sobolev_norm,
    to_physical,
    u_to_v,
    v_to_u,
)

__all__ = [
    # Spectrum
    "sobolev_norm",
    "project",
    "u_to_v",
    "v_to_u",
    "to_physical",
    "random_state",
    # Inversion
    "apply_L",
    "invert_explicit",
    "invert_dense",
    # Burgers
    "lam",
    "solve_implicit",
    "blowup_scan",
    "omega_sweep",
]
