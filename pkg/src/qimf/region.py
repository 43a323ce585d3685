"""The amplifying region: an annulus in distance to the nearest zero frequency.

Membership is decided on squared distances in exact integer arithmetic, so
masks do not depend on floating-point rounding at the ring boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .state import StateVector, as_mask


@dataclass(frozen=True)
class RegionSpec:
    d1: float
    d2: float
    N1: int
    N2: int

    def __post_init__(self):
        if not (0 <= self.d1 <= self.d2):
            raise ValueError(f"region bounds must satisfy 0 <= d1 <= d2, got {self.d1}, {self.d2}")
        if self.N1 < 1 or self.N2 < 1:
            raise ValueError("frame dims must be positive")

    @property
    def squared_bounds(self) -> tuple[int, int]:
        """Integer range ``[lo, hi]`` of admissible squared distances.

        A float radius carries up to half an ulp of rounding, so its exact
        square is widened by ``eps * d**2`` before rounding to integers;
        integer radii are unaffected.
        """
        lo = math.ceil(_widened_square(self.d1, -1))
        if math.isinf(self.d2):
            hi = self.N1 ** 2 + self.N2 ** 2
        else:
            hi = math.floor(_widened_square(self.d2, +1))
        return lo, hi


def _widened_square(d: float, direction: int) -> Fraction:
    sq = Fraction(d) ** 2
    return sq + direction * sq * Fraction(2) ** -52


def _check_index(u: int, v: int, dims: tuple[int, int]) -> None:
    n1, n2 = dims
    if not (0 <= u < n1 and 0 <= v < n2):
        raise IndexError(f"frequency ({u}, {v}) outside {n1}x{n2}")


def squared_zero_distance(u: int, v: int, dims: tuple[int, int]) -> int:
    n1, n2 = dims
    du = min(u, n1 - u)
    dv = min(v, n2 - v)
    return du * du + dv * dv


def zero_distance(u: int, v: int, dims: tuple[int, int]) -> float:
    """Euclidean distance from ``(u, v)`` to the nearest of the four zero-frequency corners."""
    _check_index(u, v, dims)
    return math.sqrt(squared_zero_distance(u, v, dims))


def in_region(u: int, v: int, spec: RegionSpec) -> bool:
    dims = (spec.N1, spec.N2)
    _check_index(u, v, dims)
    lo, hi = spec.squared_bounds
    return lo <= squared_zero_distance(u, v, dims) <= hi


def squared_distance_grid(dims: tuple[int, int]) -> np.ndarray:
    n1, n2 = dims
    u = np.arange(n1, dtype=np.int64)
    v = np.arange(n2, dtype=np.int64)
    du = np.minimum(u, n1 - u)
    dv = np.minimum(v, n2 - v)
    return du[:, None] ** 2 + dv[None, :] ** 2


def region_mask(spec: RegionSpec) -> np.ndarray:
    """Boolean mask over basis index ``k = u*N2 + v``."""
    lo, hi = spec.squared_bounds
    sq = squared_distance_grid((spec.N1, spec.N2))
    return ((sq >= lo) & (sq <= hi)).ravel()


@dataclass(frozen=True)
class OverlapStats:
    M_D: float
    M_prime_D: float
    lam: float
    lam_prime: float

    @property
    def M(self) -> float:
        return self.M_D + self.M_prime_D


def overlap_stats(freq_state: StateVector, mask, M: float = 1.0) -> OverlapStats:
    """In-region intensity statistics of a frequency-domain state.

    ``M`` rescales the (unit-norm) intensities back to the image's
    normalization factor; the ratios do not depend on it.
    ``lam_prime`` is ``inf`` when nothing lies outside the region.
    """
    m = as_mask(mask, freq_state.amplitudes.size)
    p = np.abs(freq_state.amplitudes) ** 2
    inside = float(p[m].sum())
    outside = float(p[~m].sum())
    total = inside + outside
    lam = inside / total
    lam_prime = inside / outside if outside > 0 else math.inf
    return OverlapStats(M_D=M * lam, M_prime_D=M * (1.0 - lam), lam=lam, lam_prime=lam_prime)


class EmptyTargetError(ValueError):
    pass


def _restricted(freq_state: StateVector, keep: np.ndarray, what: str) -> StateVector:
    amps = np.where(keep, freq_state.amplitudes, 0.0)
    norm = np.linalg.norm(amps)
    if norm == 0.0:
        raise EmptyTargetError(f"empty {what}: no intensity in the selected indices")
    return freq_state.with_amplitudes(amps / norm)


def target_state(freq_state: StateVector, mask) -> StateVector:
    """In-region component, renormalized."""
    m = as_mask(mask, freq_state.amplitudes.size)
    return _restricted(freq_state, m, "target")


def complement_state(freq_state: StateVector, mask) -> StateVector:
    """Out-of-region component, renormalized."""
    m = as_mask(mask, freq_state.amplitudes.size)
    return _restricted(freq_state, ~m, "complement")
