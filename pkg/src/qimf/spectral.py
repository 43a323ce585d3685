"""2D quantum Fourier transform on amplitude states.

The forward kernel is ``exp(+2 pi i j k / N) / sqrt(N)`` per axis, which is
numpy's orthonormal *inverse* FFT; output is in natural frequency order.
"""

from __future__ import annotations

import numpy as np

from .circuit import Circuit
from .state import StateVector


def qft2d_array(grid: np.ndarray) -> np.ndarray:
    """Forward transform of an ``(N1, N2)`` array (not necessarily normalized)."""
    return np.fft.ifft2(grid, norm="ortho")


def iqft2d_array(grid: np.ndarray) -> np.ndarray:
    return np.fft.fft2(grid, norm="ortho")


def qft2d(state: StateVector) -> StateVector:
    return state.with_amplitudes(qft2d_array(state.grid()).ravel())


def iqft2d(state: StateVector) -> StateVector:
    return state.with_amplitudes(iqft2d_array(state.grid()).ravel())


def qft1d_matrix(m: int) -> np.ndarray:
    """Explicit ``2**m x 2**m`` QFT kernel."""
    n = 1 << m
    jk = np.outer(np.arange(n), np.arange(n))
    return np.exp(2j * np.pi * jk / n) / np.sqrt(n)


def qft1d_circuit(m: int) -> Circuit:
    """Textbook QFT: Hadamard plus controlled phases per qubit, then bit-reversal swaps."""
    circ = Circuit(m)
    for i in range(m - 1, -1, -1):
        circ.h(i)
        for j in range(i - 1, -1, -1):
            circ.p(2 * np.pi / 2 ** (i - j + 1), i, controls={j: 1})
    for q in range(m // 2):
        circ.swap(q, m - 1 - q)
    return circ


def _qft1d_counts(m: int) -> tuple[int, int, int]:
    return m, m * (m - 1) // 2, m // 2


def qft_gate_counts(n1: int, n2: int) -> tuple[int, int, int]:
    """``(hadamards, controlled_phases, swaps)`` for one 2D QFT."""
    if n1 < 1 or n2 < 1:
        raise ValueError("register sizes must be >= 1")
    a, b = _qft1d_counts(n1), _qft1d_counts(n2)
    return tuple(x + y for x, y in zip(a, b))


def qft_cost(n1: int, n2: int) -> int:
    """Elementary cost of one 2D QFT (a swap is charged as three CNOTs)."""
    h, cp, sw = qft_gate_counts(n1, n2)
    return h + cp + 3 * sw
