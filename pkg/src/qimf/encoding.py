"""Amplitude encoding of images and efficient encoders for rectangle images.

The rectangle encoder prepares a uniform superposition over ``[0, w]`` on the
row register and ``[0, h]`` on the column register, then translates it by a
modular addition of ``(x1, y1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit
from .state import StateVector, UnnormalizableError, from_values


def _log2_exact(n: int) -> int | None:
    if n >= 2 and n & (n - 1) == 0:
        return n.bit_length() - 1
    return None


class DimensionError(ValueError):
    """Image sides must be powers of two."""


@dataclass(frozen=True)
class ImageBuffer:
    """Grayscale image, row-major ``(N1, N2)`` array with values in ``[0, 1]``."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.array(self.pixels, dtype=np.float64)
        if px.ndim != 2:
            raise ValueError("image must be two-dimensional")
        n1, n2 = px.shape
        if _log2_exact(n1) is None or _log2_exact(n2) is None:
            raise DimensionError(
                f"image is {n1}x{n2}; sides must be powers of two (pad or crop required)"
            )
        if not np.all(np.isfinite(px)) or px.min() < 0.0 or px.max() > 1.0:
            raise ValueError("pixel values must lie in [0, 1]")
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @property
    def shape(self) -> tuple[int, int]:
        return self.pixels.shape

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def n1(self) -> int:
        return _log2_exact(self.height)

    @property
    def n2(self) -> int:
        return _log2_exact(self.width)


def encode_image(image: ImageBuffer) -> tuple[StateVector, float]:
    """Dense amplitude encoding: ``s_k = F(i, j) / sqrt(M)``, ``k = i*N2 + j``."""
    try:
        return from_values(image.pixels.ravel(), image.n1, image.n2)
    except UnnormalizableError:
        raise UnnormalizableError("unnormalizable: image is all zero") from None


def decode_state(state, dims: tuple[int, int] | None = None) -> ImageBuffer:
    """Render amplitude moduli as an image, max-rescaled to 1. Phases are dropped."""
    if isinstance(state, StateVector):
        amps = state.amplitudes
        dims = dims or state.dims
    else:
        amps = np.asarray(state).ravel()
        if dims is None:
            raise ValueError("dims required for raw amplitude arrays")
    mag = np.abs(amps).reshape(dims)
    peak = mag.max()
    return ImageBuffer(mag / peak if peak > 0 else np.zeros(dims))


# --- uniform superposition over [0, C] -------------------------------------


@dataclass(frozen=True)
class IntervalPartition:
    C: int
    blocks: tuple[tuple[int, int], ...]

    @property
    def sizes(self) -> list[int]:
        return [size for _, size in self.blocks]

    def __len__(self) -> int:
        return len(self.blocks)


def interval_partition(C: int) -> IntervalPartition:
    """Split ``[0, C]`` digit by digit.

    Each set binary digit of ``C`` (most significant first) emits the block
    with that digit cleared and every lower digit free; the final block is
    ``{C}`` itself.
    """
    if C < 0:
        raise ValueError("C must be nonnegative")
    blocks = []
    prefix = 0
    for p in range(C.bit_length() - 1, -1, -1):
        if (C >> p) & 1:
            blocks.append((prefix, 1 << p))
            prefix |= 1 << p
    blocks.append((C, 1))
    return IntervalPartition(C, tuple(blocks))


def rotation_angles(partition: IntervalPartition) -> list[float]:
    """R_y angles splitting off each block from the elements not yet assigned.

    ``cos(theta_j / 2)**2 = M_j / R_{j-1}`` with ``R_0 = C + 1``.
    """
    remaining = partition.C + 1
    angles = []
    for size in partition.sizes[:-1]:
        ratio = min(1.0, size / remaining)
        angles.append(2.0 * float(np.arccos(np.sqrt(ratio))))
        remaining -= size
    return angles


def uniform_range_circuit(C: int, n: int, offset: int = 0, circ: Circuit | None = None) -> Circuit:
    """Gate list for ``|0> -> sum_{j<=C} |j> / sqrt(C+1)`` on qubits ``offset .. offset+n-1``."""
    if not 0 <= C <= (1 << n) - 1:
        raise ValueError(f"C={C} out of range for {n} qubits")
    circ = circ if circ is not None else Circuit(offset + n)
    if C + 1 == 1 << (C + 1).bit_length() - 1:
        for q in range((C + 1).bit_length() - 1):
            circ.h(offset + q)
        return circ
    part = interval_partition(C)
    angles = rotation_angles(part)
    ones = [p for p in range(C.bit_length() - 1, -1, -1) if (C >> p) & 1]
    controls: dict[int, int] = {}
    for theta, p in zip(angles, ones):
        circ.ry(theta, offset + p, controls=controls)
        # this branch (digit p cleared) is the block: lower digits go uniform
        branch = {**controls, offset + p: 0}
        for q in range(p):
            circ.h(offset + q, controls=branch)
        controls = {**controls, offset + p: 1}
    return circ


def prepare_uniform_range(C: int, n: int) -> np.ndarray:
    """Simulate the uniform-range circuit; returns the ``2**n`` amplitudes."""
    return uniform_range_circuit(C, n).run()


def uniform_range_direct(C: int, n: int) -> np.ndarray:
    """Direct assignment of the uniform superposition over ``[0, C]``."""
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[: C + 1] = 1.0 / np.sqrt(C + 1)
    return amps


# --- translation and the rectangle encoder ----------------------------------


def modular_shift(state: StateVector, dx: int, dy: int) -> StateVector:
    """Move amplitude at ``(i, j)`` to ``((i+dx) mod N1, (j+dy) mod N2)``."""
    out = np.roll(state.grid(), (dx, dy), axis=(0, 1))
    return state.with_amplitudes(out.ravel())


def qadder_cost(m: int, constant: int) -> int:
    """Cost of adding a classical constant mod ``2**m`` in the Fourier basis.

    QFT (swaps absorbed by relabelling), one phase gate per qubit, inverse
    QFT: ``2 * (m + m(m-1)/2) + m``. Zero when the constant vanishes mod 2**m.
    """
    if constant % (1 << m) == 0:
        return 0
    return 2 * (m + m * (m - 1) // 2) + m


@dataclass(frozen=True)
class RectangleSpec:
    """Inclusive rectangle ``x1 <= i <= x1+w``, ``y1 <= j <= y1+h`` in an ``N1 x N2`` frame."""

    w: int
    h: int
    x1: int
    y1: int
    N1: int
    N2: int

    def __post_init__(self):
        if _log2_exact(self.N1) is None or _log2_exact(self.N2) is None:
            raise DimensionError("frame sides must be powers of two")
        if min(self.w, self.h, self.x1, self.y1) < 0:
            raise ValueError("rectangle parameters must be nonnegative")
        if self.x1 + self.w > self.N1 - 1 or self.y1 + self.h > self.N2 - 1:
            raise ValueError("rectangle out of frame")

    @property
    def n1(self) -> int:
        return _log2_exact(self.N1)

    @property
    def n2(self) -> int:
        return _log2_exact(self.N2)


def rasterize_rectangle(spec: RectangleSpec) -> ImageBuffer:
    px = np.zeros((spec.N1, spec.N2))
    px[spec.x1 : spec.x1 + spec.w + 1, spec.y1 : spec.y1 + spec.h + 1] = 1.0
    return ImageBuffer(px)


def rectangle_circuit(spec: RectangleSpec) -> Circuit:
    """``U_w (x) U_h``: row register on the high qubits, column register on the low ones."""
    circ = Circuit(spec.n1 + spec.n2)
    uniform_range_circuit(spec.w, spec.n1, offset=spec.n2, circ=circ)
    uniform_range_circuit(spec.h, spec.n2, offset=0, circ=circ)
    return circ


def prepare_rectangle(spec: RectangleSpec) -> StateVector:
    amps = rectangle_circuit(spec).run()
    state = StateVector(amps, spec.n1, spec.n2)
    return modular_shift(state, spec.x1, spec.y1)


def rectangle_encoder_cost(spec: RectangleSpec) -> dict:
    circ = rectangle_circuit(spec)
    adders = qadder_cost(spec.n1, spec.x1) + qadder_cost(spec.n2, spec.y1)
    return {
        "gates": circ.size,
        "uniform_cost": circ.cost,
        "adder_cost": adders,
        "total": circ.cost + adders,
    }


def dense_encoder_cost(n: int) -> int:
    """Generic real-amplitude preparation by uniformly controlled R_y: ``2**(n+1) - 2``."""
    return (1 << (n + 1)) - 2
