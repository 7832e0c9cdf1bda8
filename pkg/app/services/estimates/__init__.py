"""Empirical verification of the convolution operator bounds."""

from app.services.estimates.catalog import SUITES, bound_spec, suite
from app.services.estimates.constants import lattice_constant
from app.services.estimates.kernel_sums import k3_sum_estimate
from app.services.estimates.lab import (
    b30_decay_check,
    empirical_ratio,
    n_sweep,
    qbound_check,
    run_suite,
    stability_curve,
)

__all__ = [
    # Catalog
    "SUITES",
    "bound_spec",
    "suite",
    "lattice_constant",
    # Ratio tests
    "empirical_ratio",
    "run_suite",
    "stability_curve",
    "n_sweep",
    "b30_decay_check",
    "qbound_check",
    # Lattice sums
    "k3_sum_estimate",
]
