"""Sparse Fourier coefficient states on the zero-mean torus."""

import cmath
from types import MappingProxyType
from typing import Any, Dict, Iterator, List, Mapping, Optional, Tuple

import numpy as np
from pydantic import BaseModel, field_validator

from app.exceptions import InvalidStateError, NonHermitianStateError

HERMITIAN_TOLERANCE = 1e-10


class ModeRecord(BaseModel):
    """One Fourier coefficient as stored in JSON and CSV artifacts."""

    k: int
    re: float
    im: float

    @field_validator("k")
    @classmethod
    def check_nonzero(cls, v: int) -> int:
        """The zero mode is never stored."""
        if v == 0:
            raise ValueError("mode k=0 is not allowed")
        return v

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)


class FourierState:
    """
    Immutable finite map from nonzero integer wavenumbers to coefficients.

    Missing modes are zero and exact zeros are never stored. When
    ``real_valued`` is set the coefficients satisfy v_{-k} = conj(v_k)
    up to a relative defect of 1e-10.
    """

    __slots__ = ("_modes", "_real_valued")

    def __init__(
        self,
        modes: Optional[Mapping[int, complex]] = None,
        real_valued: bool = False,
    ):
        """
        Initialize the state.

        Args:
            modes: Mapping k -> v_k with k != 0
            real_valued: Assert Hermitian symmetry

        Raises:
            InvalidStateError: If k=0 is present or a value is not finite
            NonHermitianStateError: If real_valued and v_{-k} != conj(v_k)
        """
        cleaned: Dict[int, complex] = {}
        for key, value in (modes or {}).items():
            k = int(key)
            if k != key or isinstance(key, bool):
                raise InvalidStateError(f"Wavenumber {key!r} is not an int")
            if k == 0:
                raise InvalidStateError(
                    "Mode k=0 is not allowed in a zero-mean state"
                )
            z = complex(value)
            if not cmath.isfinite(z):
                raise InvalidStateError(f"Coefficient at k={k} is {z}")
            if z != 0:
                cleaned[k] = z
        self._modes: Mapping[int, complex] = MappingProxyType(
            dict(sorted(cleaned.items()))
        )
        self._real_valued = bool(real_valued)
        if self._real_valued:
            defect = self.hermitian_defect()
            if defect > HERMITIAN_TOLERANCE * max(1.0, self.max_amplitude):
                raise NonHermitianStateError(defect)

    # Construction helpers

    @classmethod
    def zero(cls) -> "FourierState":
        """The zero state (real-valued)."""
        return cls({}, real_valued=True)

    @classmethod
    def hermitian(cls, positive: Mapping[int, complex]) -> "FourierState":
        """
        Build a real-valued state from its positive modes.

        Args:
            positive: Mapping k -> v_k for k > 0

        Returns:
            FourierState: State with v_{-k} = conj(v_k)
        """
        modes: Dict[int, complex] = {}
        for k, value in positive.items():
            if k <= 0:
                raise InvalidStateError(
                    f"hermitian() expects positive modes, got k={k}"
                )
            modes[k] = complex(value)
            modes[-k] = complex(value).conjugate()
        return cls(modes, real_valued=True)

    @classmethod
    def from_dense(
        cls, array: np.ndarray, real_valued: bool = False
    ) -> "FourierState":
        """
        Build a state from a dense array indexed by k + bound.

        Args:
            array: Complex array of odd length 2*bound+1
            real_valued: Assert Hermitian symmetry

        Returns:
            FourierState: The sparse state (entry at index bound ignored)
        """
        values = np.asarray(array, dtype=np.complex128)
        if values.ndim != 1 or values.size % 2 == 0:
            raise InvalidStateError(
                f"Dense array must be 1-D of odd length, got {values.shape}"
            )
        bound = values.size // 2
        nonzero = np.flatnonzero(values)
        modes = {
            int(index) - bound: complex(values[index])
            for index in nonzero
            if index != bound
        }
        return cls(modes, real_valued=real_valued)

    @classmethod
    def from_records(
        cls, records: List[ModeRecord], real_valued: bool = True
    ) -> "FourierState":
        """Build a state from serialised mode records."""
        modes: Dict[int, complex] = {}
        for record in records:
            if record.k in modes:
                raise InvalidStateError(f"Duplicate mode k={record.k}")
            modes[record.k] = record.value
        return cls(modes, real_valued=real_valued)

    # Mapping protocol

    @property
    def modes(self) -> Mapping[int, complex]:
        return self._modes

    @property
    def real_valued(self) -> bool:
        return self._real_valued

    def __getitem__(self, k: int) -> complex:
        return self._modes.get(k, 0j)

    def __contains__(self, k: object) -> bool:
        return k in self._modes

    def __iter__(self) -> Iterator[int]:
        return iter(self._modes)

    def __len__(self) -> int:
        return len(self._modes)

    def items(self) -> Iterator[Tuple[int, complex]]:
        return iter(self._modes.items())

    @property
    def support(self) -> Tuple[int, ...]:
        """Sorted wavenumbers carrying a nonzero coefficient."""
        return tuple(self._modes)

    @property
    def support_bound(self) -> int:
        """Largest |k| in the support (0 for the zero state)."""
        return max((abs(k) for k in self._modes), default=0)

    @property
    def max_amplitude(self) -> float:
        return max((abs(z) for z in self._modes.values()), default=0.0)

    # Symmetry

    def hermitian_defect(self) -> float:
        """Max over k of |v_{-k} - conj(v_k)|."""
        return max(
            (
                abs(self[-k] - z.conjugate())
                for k, z in self._modes.items()
            ),
            default=0.0,
        )

    def is_hermitian(self, tol: float = HERMITIAN_TOLERANCE) -> bool:
        return self.hermitian_defect() <= tol * max(1.0, self.max_amplitude)

    def symmetrized(self) -> "FourierState":
        """Project onto Hermitian states: (v_k + conj(v_{-k})) / 2."""
        keys = set(self._modes) | {-k for k in self._modes}
        modes = {
            k: 0.5 * (self[k] + self[-k].conjugate()) for k in keys
        }
        return FourierState(modes, real_valued=True)

    def as_real_valued(self) -> "FourierState":
        """Re-flag a Hermitian state as real-valued (validated)."""
        if self._real_valued:
            return self
        return FourierState(self._modes, real_valued=True)

    # Dense views

    def to_dense(self, bound: Optional[int] = None) -> np.ndarray:
        """
        Dense coefficient array indexed by k + bound.

        Args:
            bound: Half-width of the array, defaults to support_bound

        Returns:
            np.ndarray: Complex array of length 2*bound+1, zero at k=0

        Raises:
            InvalidStateError: If bound is smaller than the support bound
        """
        if bound is None:
            bound = self.support_bound
        if bound < self.support_bound:
            raise InvalidStateError(
                f"Dense bound {bound} is below the support bound "
                f"{self.support_bound}"
            )
        array = np.zeros(2 * bound + 1, dtype=np.complex128)
        for k, z in self._modes.items():
            array[k + bound] = z
        return array

    # Arithmetic

    def _combine(
        self, other: "FourierState", sign: float
    ) -> "FourierState":
        keys = set(self._modes) | set(other._modes)
        modes = {k: self[k] + sign * other[k] for k in keys}
        return FourierState(
            modes, real_valued=self._real_valued and other._real_valued
        )

    def __add__(self, other: object) -> "FourierState":
        if not isinstance(other, FourierState):
            return NotImplemented
        return self._combine(other, 1.0)

    def __sub__(self, other: object) -> "FourierState":
        if not isinstance(other, FourierState):
            return NotImplemented
        return self._combine(other, -1.0)

    def __mul__(self, scalar: object) -> "FourierState":
        if not isinstance(scalar, (int, float, complex)):
            return NotImplemented
        factor = complex(scalar)
        real = self._real_valued and factor.imag == 0
        return FourierState(
            {k: factor * z for k, z in self._modes.items()},
            real_valued=real,
        )

    __rmul__ = __mul__

    def __neg__(self) -> "FourierState":
        return self * -1.0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FourierState):
            return NotImplemented
        return dict(self._modes) == dict(other._modes)

    def __hash__(self) -> int:
        return hash(tuple(self._modes.items()))

    def allclose(self, other: "FourierState", tol: float = 1e-12) -> bool:
        """Max coefficient difference below tol."""
        keys = set(self._modes) | set(other._modes)
        return all(abs(self[k] - other[k]) <= tol for k in keys)

    # Serialisation

    def to_records(self) -> List[ModeRecord]:
        return [
            ModeRecord(k=k, re=z.real, im=z.imag)
            for k, z in self._modes.items()
        ]

    def to_dict(self) -> Dict[str, Any]:
        """Convert the state to a JSON-ready dictionary."""
        return {
            "real_valued": self._real_valued,
            "support_bound": self.support_bound,
            "modes": [record.model_dump() for record in self.to_records()],
        }

    def __repr__(self) -> str:
        shown = ", ".join(
            f"{k}: {z:.3g}" for k, z in list(self._modes.items())[:6]
        )
        more = "" if len(self) <= 6 else ", ..."
        return (
            f"FourierState({{{shown}{more}}}, "
            f"real_valued={self._real_valued})"
        )
