"""Analytic initial profiles and results for rotating Burgers flows."""

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional

import numpy as np

from app.exceptions import InvalidParameterError

ComplexFunction = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class AnalyticProfile:
    """
    Initial profile phi analytic on the strip |Im z| < strip.

    ``sup_phi`` and ``sup_dphi`` bound |phi| and |phi'| on the closed
    strip; unbounded profiles report ``math.inf`` for the quantity that
    is not bounded.
    """

    name: str
    value: ComplexFunction
    derivative: ComplexFunction
    strip: float
    sup_phi: float
    sup_dphi: float
    coefficients: Optional[Dict[int, complex]] = None

    def __call__(self, z: Any) -> np.ndarray:
        return self.value(np.asarray(z, dtype=np.complex128))

    def dphi(self, z: Any) -> np.ndarray:
        return self.derivative(np.asarray(z, dtype=np.complex128))

    def check_consistency(
        self, points: Any, h: float = 1e-5
    ) -> float:
        """
        Max deviation between phi' and a central difference of phi.

        Args:
            points: Sample points inside the strip
            h: Difference step along the real axis

        Returns:
            float: Max absolute discrepancy
        """
        z = np.asarray(points, dtype=np.complex128)
        numeric = (self(z + h) - self(z - h)) / (2.0 * h)
        return float(np.max(np.abs(numeric - self.dphi(z))))

    @classmethod
    def linear(cls, a: complex, b: complex = 0.0) -> "AnalyticProfile":
        """phi(z) = a z + b, entire with constant derivative."""
        slope = complex(a)
        offset = complex(b)
        return cls(
            name=f"linear(a={a}, b={b})",
            value=lambda z: slope * z + offset,
            derivative=lambda z: np.full_like(z, slope, dtype=np.complex128),
            strip=math.inf,
            sup_phi=math.inf if slope != 0 else abs(offset),
            sup_dphi=abs(slope),
        )

    @classmethod
    def trigonometric(
        cls, coefficients: Mapping[int, complex], strip: float
    ) -> "AnalyticProfile":
        """
        phi(z) = sum_k c_k exp(i k z), a trigonometric polynomial.

        Args:
            coefficients: Mapping k -> c_k
            strip: Half-width d of the strip used for the sup bounds

        Returns:
            AnalyticProfile: Profile with sup bounds sum |c_k| e^{|k| d}
            and sum |k||c_k| e^{|k| d}
        """
        if strip <= 0:
            raise InvalidParameterError(f"strip must be > 0, got {strip}")
        coeffs = {int(k): complex(c) for k, c in coefficients.items() if c}
        ks = np.array(sorted(coeffs), dtype=np.float64)
        cs = np.array([coeffs[int(k)] for k in ks], dtype=np.complex128)

        def value(z: np.ndarray) -> np.ndarray:
            phase = np.exp(1j * np.multiply.outer(z, ks))
            return np.asarray(phase @ cs)

        def derivative(z: np.ndarray) -> np.ndarray:
            phase = np.exp(1j * np.multiply.outer(z, ks))
            return np.asarray(phase @ (1j * ks * cs))

        growth = np.exp(np.abs(ks) * strip)
        return cls(
            name="trigonometric",
            value=value,
            derivative=derivative,
            strip=strip,
            sup_phi=float(np.sum(np.abs(cs) * growth)),
            sup_dphi=float(np.sum(np.abs(ks) * np.abs(cs) * growth)),
            coefficients=coeffs,
        )

    @classmethod
    def sine(cls, amplitude: float, strip: float) -> "AnalyticProfile":
        """phi(z) = amplitude * sin(z)."""
        half = complex(amplitude) / 2j
        profile = cls.trigonometric({1: half, -1: -half}, strip)
        return cls(
            name=f"sine(amplitude={amplitude})",
            value=lambda z: amplitude * np.sin(z),
            derivative=lambda z: amplitude * np.cos(z),
            strip=strip,
            sup_phi=profile.sup_phi,
            sup_dphi=profile.sup_dphi,
            coefficients=profile.coefficients,
        )


@dataclass(eq=False)
class CharacteristicSolution:
    """Solution of v = phi(z - lambda(t) v) at sample points."""

    z: np.ndarray
    t: float
    omega: float
    lam: complex
    v: np.ndarray
    dz_v: np.ndarray
    denominator: np.ndarray
    iterations: int
    converged: bool
    near_singular: bool = False
    method: str = "fixed-point"

    @property
    def min_denominator(self) -> float:
        return float(np.min(np.abs(self.denominator)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t": self.t,
            "omega": self.omega,
            "iterations": self.iterations,
            "converged": self.converged,
            "near_singular": self.near_singular,
            "method": self.method,
            "min_denominator": self.min_denominator,
            "max_abs_v": float(np.max(np.abs(self.v))),
        }


@dataclass(eq=False)
class BlowupResult:
    """First time the characteristic denominator 1 + lambda phi' vanishes."""

    blew_up: bool
    t_star: Optional[float]
    z_witness: Optional[complex]
    t_threshold: Optional[float]
    min_denominator: float
    times: np.ndarray
    min_denominators: np.ndarray
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        witness = self.z_witness
        return {
            "blew_up": self.blew_up,
            "t_star": self.t_star,
            "z_witness": (
                None if witness is None else [witness.real, witness.imag]
            ),
            "t_threshold": self.t_threshold,
            "min_denominator": self.min_denominator,
            "steps": int(len(self.times)),
            "notes": list(self.notes),
        }
