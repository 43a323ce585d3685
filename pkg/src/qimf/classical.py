"""Classical FFT band-mask filtering: the oracle the quantum runs are checked against."""

from __future__ import annotations

import math

import numpy as np

from .encoding import ImageBuffer, encode_image
from .region import RegionSpec, region_mask, target_state
from .spectral import iqft2d, iqft2d_array, qft2d, qft2d_array
from .state import StateVector


def ideal_bandpass_filter(image: ImageBuffer, spec: RegionSpec) -> ImageBuffer:
    """Zero every coefficient outside the region, transform back, render ``|.|`` max-rescaled.

    Uses the same transform convention as the quantum path. An image with no
    intensity in the region comes back all zero.
    """
    if (spec.N1, spec.N2) != image.shape:
        raise ValueError("region frame does not match image dims")
    spectrum = qft2d_array(image.pixels)
    spectrum = np.where(region_mask(spec).reshape(image.shape), spectrum, 0.0)
    mag = np.abs(iqft2d_array(spectrum))
    peak = mag.max()
    return ImageBuffer(mag / peak if peak > 0 else np.zeros(image.shape))


def reference_state(image: ImageBuffer, spec: RegionSpec) -> StateVector:
    """Ideal filtered state: inverse transform of the renormalized in-region component."""
    s, _ = encode_image(image)
    return reference_state_from(s, spec)


def reference_state_from(state: StateVector, spec: RegionSpec) -> StateVector:
    return iqft2d(target_state(qft2d(state), region_mask(spec)))


def _check_dims(a: ImageBuffer, b: ImageBuffer) -> None:
    if a.shape != b.shape:
        raise ValueError(f"dims mismatch: {a.shape} vs {b.shape}")


def mse(a: ImageBuffer, b: ImageBuffer) -> float:
    _check_dims(a, b)
    return float(np.mean((a.pixels - b.pixels) ** 2))


def psnr(a: ImageBuffer, b: ImageBuffer) -> float:
    """Peak signal-to-noise ratio in dB for unit peak; ``inf`` for identical images."""
    err = mse(a, b)
    return math.inf if err == 0.0 else 10.0 * math.log10(1.0 / err)


def classical_op_count(N1: int, N2: int) -> tuple[int, int]:
    """``(N log2 N butterflies, N mask evaluations)`` with ``N = N1 * N2``."""
    n = N1 * N2
    return int(n * math.log2(n)), n
