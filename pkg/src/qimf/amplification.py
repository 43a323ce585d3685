"""Fixed-point amplitude amplification with Chebyshev phase schedules.

One iterate is ``G(alpha, beta) = -S_f(alpha) S_t(beta)`` with
``S_f(alpha) = I - (1 - e^{-i alpha}) |f><f|`` and ``S_t`` realized as the
oracle-form diagonal phase ``e^{+i beta/2}`` on the region, ``e^{-i beta/2}``
off it. Iterates are applied for ``j = 1 .. l`` in that order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .state import StateVector, apply_diagonal_phase, apply_rank_one_phase, as_mask


class NoGuaranteeError(ValueError):
    pass


class NothingToAmplifyError(ValueError):
    pass


def chebyshev_t(order: float, x: float) -> float:
    """``T_order(x)`` for real order, via the trigonometric/hyperbolic forms.

    Non-integer orders are only defined here for ``x > -1``.
    """
    if abs(x) <= 1.0:
        return math.cos(order * math.acos(x))
    if x > 1.0:
        return math.cosh(order * math.acosh(x))
    if float(order).is_integer():
        return (-1) ** int(order) * math.cosh(order * math.acosh(-x))
    raise ValueError("non-integer Chebyshev order needs x > -1")


def min_sequence_length(lambda_bound: float, delta: float) -> tuple[int, int]:
    """Smallest odd ``L >= ln(2/delta) / sqrt(lambda_bound)``, at least 3; returns ``(l, L)``."""
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    if lambda_bound <= 0.0:
        raise NoGuaranteeError("no guarantee possible for lambda_bound <= 0")
    if lambda_bound > 1.0:
        raise ValueError("lambda_bound must be <= 1")
    L = max(3, math.ceil(math.log(2.0 / delta) / math.sqrt(lambda_bound)))
    if L % 2 == 0:
        L += 1
    return (L - 1) // 2, L


def _arccot(x: np.ndarray) -> np.ndarray:
    # branch (0, pi), continuous through x = 0
    return np.arctan2(1.0, x)


@dataclass(frozen=True)
class Schedule:
    delta: float
    l: int
    L: int
    gamma: float
    alphas: tuple[float, ...]
    betas: tuple[float, ...]

    @property
    def lambda_threshold(self) -> float:
        """Smallest overlap for which success >= 1 - delta**2 is guaranteed (``1 - gamma**2``)."""
        return 1.0 - self.gamma ** 2

    def predicted_success(self, lam: float) -> float:
        """Closed-form success ``1 - delta^2 T_L(sqrt(1 - lam) / gamma)^2``."""
        x = math.sqrt(max(0.0, 1.0 - lam)) / self.gamma
        return 1.0 - self.delta ** 2 * chebyshev_t(self.L, x) ** 2

    def as_dict(self) -> dict:
        return {
            "delta": self.delta,
            "l": self.l,
            "L": self.L,
            "gamma": self.gamma,
            "lambda_threshold": self.lambda_threshold,
            "alphas": list(self.alphas),
            "betas": list(self.betas),
        }


def schedule(l: int, delta: float) -> Schedule:
    if l < 1:
        raise ValueError("l must be >= 1")
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    L = 2 * l + 1
    gamma = 1.0 / chebyshev_t(1.0 / L, 1.0 / delta)
    j = np.arange(1, l + 1)
    alphas = 2.0 * _arccot(np.tan(2.0 * np.pi * j / L) * math.sqrt(1.0 - gamma ** 2))
    betas = -alphas[::-1]
    return Schedule(
        delta=delta,
        l=l,
        L=L,
        gamma=float(gamma),
        alphas=tuple(float(a) for a in alphas),
        betas=tuple(float(b) for b in betas),
    )


def reflect_target(state: StateVector, mask, beta: float) -> StateVector:
    """Oracle form of ``S_t(beta)``; equals the rank-one form up to ``e^{-i beta/2}`` on span{t, t_bar}."""
    return apply_diagonal_phase(state, mask, beta / 2.0, -beta / 2.0)


def reflect_source(state: StateVector, f_state: StateVector, alpha: float) -> StateVector:
    return apply_rank_one_phase(state, f_state, alpha, sign=-1)


def grover_iterate(state: StateVector, f_state: StateVector, mask, alpha: float, beta: float) -> StateVector:
    out = reflect_source(reflect_target(state, mask, beta), f_state, alpha)
    return out.with_amplitudes(-out.amplitudes)


def run_iterations(f_state: StateVector, mask, sched: Schedule) -> StateVector:
    m = as_mask(mask, f_state.amplitudes.size)
    if not np.any(np.abs(f_state.amplitudes[m]) > 0):
        raise NothingToAmplifyError("nothing to amplify: no intensity inside the region")
    state = f_state
    for alpha, beta in zip(sched.alphas, sched.betas):
        state = grover_iterate(state, f_state, m, alpha, beta)
    return state


def mask_probability(state: StateVector, mask) -> float:
    m = as_mask(mask, state.amplitudes.size)
    return float(np.sum(np.abs(state.amplitudes[m]) ** 2))
