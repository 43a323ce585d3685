"""Exact statevector arithmetic for a two-register (row, column) system.

Basis index ``k = i * N2 + j``: the row register holds the high bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

ATOL = 1e-10


class DimensionMismatch(ValueError):
    pass


class UnnormalizableError(ValueError):
    pass


@dataclass(frozen=True)
class StateVector:
    """Normalized complex amplitudes over ``2**(n1 + n2)`` basis states."""

    amplitudes: np.ndarray
    n1: int
    n2: int

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).ravel()
        if amps.size != 1 << (self.n1 + self.n2):
            raise DimensionMismatch(
                f"dimension mismatch: {amps.size} amplitudes for n1={self.n1}, n2={self.n2}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > ATOL:
            raise UnnormalizableError(f"state norm {norm!r} differs from 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    @property
    def dims(self) -> tuple[int, int]:
        return 1 << self.n1, 1 << self.n2

    def grid(self) -> np.ndarray:
        """Amplitudes reshaped to ``(N1, N2)`` (read-only view)."""
        return self.amplitudes.reshape(self.dims)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def with_amplitudes(self, amps: np.ndarray) -> "StateVector":
        return StateVector(amps, self.n1, self.n2)

    @classmethod
    def basis(cls, k: int, n1: int, n2: int) -> "StateVector":
        amps = np.zeros(1 << (n1 + n2), dtype=np.complex128)
        amps[k] = 1.0
        return cls(amps, n1, n2)


def from_values(values, n1: int, n2: int) -> tuple[StateVector, float]:
    """Normalize ``values`` into a state; returns ``(state, M)`` with ``M = sum |v|^2``."""
    vals = np.asarray(values, dtype=np.complex128).ravel()
    if vals.size != 1 << (n1 + n2):
        raise DimensionMismatch(
            f"dimension mismatch: {vals.size} values for n1={n1}, n2={n2}"
        )
    m = float(np.vdot(vals, vals).real)
    if m == 0.0:
        raise UnnormalizableError("unnormalizable: all values are zero")
    return StateVector(vals / np.sqrt(m), n1, n2), m


def _check_same(a: StateVector, b: StateVector) -> None:
    if (a.n1, a.n2) != (b.n1, b.n2):
        raise DimensionMismatch(
            f"dimension mismatch: ({a.n1}, {a.n2}) vs ({b.n1}, {b.n2})"
        )


def inner_product(a: StateVector, b: StateVector) -> complex:
    """``<a|b>``, conjugate-linear in ``a``."""
    _check_same(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def apply_rank_one_phase(
    state: StateVector, axis: StateVector, theta: float, sign: int = +1
) -> StateVector:
    """Apply ``I - (1 - exp(sign * i * theta)) |axis><axis|``."""
    _check_same(state, axis)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    overlap = np.vdot(axis.amplitudes, state.amplitudes)
    factor = 1.0 - np.exp(1j * sign * theta)
    return state.with_amplitudes(state.amplitudes - factor * overlap * axis.amplitudes)


Mask = Union[np.ndarray, Callable[[int], bool]]


def as_mask(mask: Mask, size: int) -> np.ndarray:
    """Normalize a bitmask or an index predicate into a boolean array."""
    if callable(mask):
        return np.fromiter((bool(mask(k)) for k in range(size)), dtype=bool, count=size)
    arr = np.asarray(mask, dtype=bool).ravel()
    if arr.size != size:
        raise DimensionMismatch(f"dimension mismatch: mask of {arr.size} for {size} amplitudes")
    return arr


def apply_diagonal_phase(
    state: StateVector, mask: Mask, phase_in: float, phase_out: float
) -> StateVector:
    """Multiply in-mask amplitudes by ``e^{i phase_in}``, the rest by ``e^{i phase_out}``."""
    m = as_mask(mask, state.amplitudes.size)
    phases = np.where(m, np.exp(1j * phase_in), np.exp(1j * phase_out))
    return state.with_amplitudes(phases * state.amplitudes)


def global_phase_distance(a: StateVector, b: StateVector) -> float:
    """``min_phi ||a - e^{i phi} b||``, i.e. ``sqrt(2 - 2 |<a|b>|)``.

    Evaluated as the norm of the phase-aligned difference; the closed form
    cancels catastrophically for nearly equal states.
    """
    ov = inner_product(b, a)
    phase = ov / abs(ov) if abs(ov) > 0 else 1.0
    return float(np.linalg.norm(a.amplitudes - phase * b.amplitudes))


def fidelity(a: StateVector, b: StateVector) -> float:
    return abs(inner_product(a, b)) ** 2
