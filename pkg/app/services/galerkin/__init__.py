"""Galerkin-truncated evolution, integrated forms and contraction solves."""

from app.services.galerkin.contraction import contraction_solve
from app.services.galerkin.forms import (
    TruncatedForms,
    residual_first_form,
    residual_second_form,
    residual_third_form,
)
from app.services.galerkin.lipschitz import lipschitz_probe
from app.services.galerkin.system import (
    TruncatedSystem,
    galerkin_refinement,
    integrate,
    rhs_truncated,
)

__all__ = [
    # Evolution
    "TruncatedSystem",
    "rhs_truncated",
    "integrate",
    "galerkin_refinement",
    # Integrated forms
    "TruncatedForms",
    "residual_first_form",
    "residual_second_form",
    "residual_third_form",
    # Well-posedness probes
    "contraction_solve",
    "lipschitz_probe",
]
